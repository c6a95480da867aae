"""
app.py

This module defines the SharpenerApp class, the command-line app of
Sharpener. Most of the actual command code is located in the cli package
and all of the numerics in the inference package.
"""

import json
import logging
import sys
from pathlib import Path
from typing import TextIO

from rich.console import Console
from rich.logging import RichHandler

from cli import (
    ExitCode,
    ReturnsFileError,
    StatusConsole,
    UsageError,
    create_parser,
)
from inference import DomainError, NumericError

logger = logging.getLogger(__name__)

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
_REQUIRED_SECTIONS = ("analysis", "tables", "monte_carlo", "logging")


class SharpenerApp:
    def __init__(
        self, stdout: TextIO | None = None, console: Console | None = None
    ) -> None:
        """
        Class init. Sets up the output streams and the argument parser.
        Settings are read by run(), since --settings can point elsewhere.

        Parameters
        ----------
        stdout : TextIO, optional
            Where reports and tables are written. Defaults to sys.stdout.
        console : rich.console.Console, optional
            Where status lines and log records go. Defaults to stderr.

        Returns
        -------
        None
        """
        self.sharpener_ver: str = "0.1.0"
        self.program_title: str = f"Sharpener {self.sharpener_ver}"
        self.settings_json_path: Path = Path(__file__).with_name("settings.json")
        self.settings: dict = {}

        self.stdout: TextIO = stdout or sys.stdout
        self._rich_console: Console = console or Console(stderr=True, highlight=False)
        self.console = StatusConsole(self._rich_console)

        # Parser generation, pass the app in so commands can reach it
        self.parser = create_parser(self)

    def run(self, argv: list[str] | None = None) -> int:
        """
        Parse the command line, load settings and run the command

        This is the uppermost layer of error handling: every typed error of
        the inference package and the cli package ends here, is printed to
        the console and mapped to its exit code.

        Parameters
        ----------
        argv : list of str, optional
            Arguments without the program name. Defaults to sys.argv[1:].

        Returns
        -------
        int
            The process exit code
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as e:
            # argparse already printed the usage or help text
            return e.code if isinstance(e.code, int) else ExitCode.USAGE

        if args.settings:
            self.settings_json_path = Path(args.settings)
        try:
            # Only if the reading is success will the command run
            self._read_settings()
            self._load_settings(args.log_level)
        except (OSError, ValueError, KeyError, TypeError) as e:
            self.console.printline(
                f"Error loading {self.settings_json_path.name}:", "error"
            )
            self.console.printline(f"{e.__class__.__name__}: {e}", "error", True)
            return ExitCode.USAGE

        try:
            return int(args.handler(self, args))
        except UsageError as e:
            self.console.printline(f"Usage Error: {e}", "error", True)
            return ExitCode.USAGE
        except ReturnsFileError as e:
            self.console.printline(f"Parse Error: {args.file}", "error")
            self.console.printline(f"{e}", "error", True)
            return ExitCode.PARSE
        except OSError as e:
            self.console.printline(f"File Error: {e}", "error", True)
            return ExitCode.PARSE
        except DomainError as e:
            self.console.printline(f"{e.__class__.__name__}: {e}", "error", True)
            return ExitCode.DOMAIN
        except NumericError as e:
            self.console.printline(f"Numeric Error: {e}", "error", True)
            return ExitCode.NUMERIC

    def _read_settings(self) -> None:
        """
        Read settings from the settings file (settings.json next to this
        module unless --settings says otherwise)

        Raises
        ------
        OSError
            The file cannot be read
        ValueError
            The file is not valid JSON
        """
        with self.settings_json_path.open("r", encoding="utf-8") as f:
            self.settings = json.load(f)

    def _load_settings(self, log_level: str | None = None) -> None:
        """
        Process the settings that were just read in

        This function is called right after _read_settings() and basically
        "deploys" the settings: it checks that every section is present and
        sets up logging at the configured level (or --log-level).

        Raises
        ------
        KeyError
            A required section or key is missing
        ValueError
            A value is out of range
        """
        # 1.
        # Every command reads its own section, make sure they all exist
        if not isinstance(self.settings, dict):
            raise ValueError("settings must be a JSON object")
        for section in _REQUIRED_SECTIONS:
            if section not in self.settings:
                raise KeyError(f"missing section {section!r}")

        # 2.
        # Sanity checks of the values commands would otherwise trip over
        analysis = self.settings["analysis"]
        if not 0.0 < analysis["alpha"] < 1.0:
            raise ValueError(f"analysis.alpha must lie in (0, 1), got {analysis['alpha']}")
        if analysis["method"] not in ("exact", "asym1", "asym2", "asym3"):
            raise ValueError(f"unknown analysis.method {analysis['method']!r}")
        if analysis["quantile"] not in ("t", "normal"):
            raise ValueError(f"unknown analysis.quantile {analysis['quantile']!r}")
        if analysis["plugin"] not in ("raw", "debiased"):
            raise ValueError(f"unknown analysis.plugin {analysis['plugin']!r}")
        monte_carlo = self.settings["monte_carlo"]
        for key in ("seed", "reps", "block_size", "workers", "tolerances", "defaults"):
            if key not in monte_carlo:
                raise KeyError(f"missing monte_carlo.{key}")

        # 3.
        # Logging: records go to stderr through rich, below the status lines
        level = (log_level or self.settings["logging"]["level"]).upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"unknown logging level {level!r}")
        logging.basicConfig(
            level=level,
            format="%(message)s",
            handlers=[RichHandler(console=self._rich_console, show_time=False,
                                  show_path=False)],
            force=True,
        )
        logger.debug("settings loaded from %s", self.settings_json_path)
