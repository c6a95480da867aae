"""
console.py

Status console of the app. Status lines go to stderr in one of four modes,
so stdout carries only reports and tables and stays byte-stable.
"""

from rich.console import Console
from rich.style import Style

# printline modes
MODES: dict[str, Style] = {
    "success": Style(color="black", bgcolor="green"),
    "error": Style(color="white", bgcolor="red"),
    "warning": Style(color="black", bgcolor="yellow"),
    "print": Style(color="blue"),
}


class StatusConsole:
    def __init__(self, console: Console | None = None, width: int = 60) -> None:
        """
        Parameters
        ----------
        console : rich.console.Console, optional
            Where the lines go. Defaults to a stderr console.
        width : int
            Length of the dashed separator line
        """
        self.console: Console = console or Console(stderr=True, highlight=False)
        self.hline: str = "-" * width

    def printline(self, text: str, mode: str = "print", addline: bool = False) -> None:
        """
        Print a single line of status text

        Parameters
        ----------
        text : str
            The line to be printed
        mode : str
            "success", "error", "warning" or "print"
        addline : bool
            Whether to add a line of dashes after the printed line
        """
        if mode not in MODES:
            raise ValueError(f"Unknown console mode: {mode}")
        self.console.print(str(text), style=MODES[mode], markup=False)
        if addline:
            self.console.print(self.hline, markup=False)
