from .parser import create_parser
from .commands import ExitCode, UsageError
from .console import StatusConsole
from .returns_file import ReturnsFileError
