"""
main.py

Entry point of this app
"""

import sys

from app import SharpenerApp

# Entry point
if __name__ == "__main__":
    sys.exit(SharpenerApp().run())
