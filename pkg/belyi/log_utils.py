"""
Log format for the package, and ANSI colours for verifier logs and CLI status lines
"""
import logging
import os
import sys
from enum import StrEnum
from typing import Optional, TextIO


class Color(StrEnum):
    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    BLUE = "\033[34m"
    MAGENTA = "\033[35m"
    CYAN = "\033[36m"
    WHITE = "\033[37m"
    BG_BLACK = "\033[40m"
    BG_BLUE = "\033[44m"
    RESET = "\033[0m"


STATUS_COLORS = {"pass": Color.GREEN, "fail": Color.RED, "skipped": Color.YELLOW}

_initialized = False


def init_logging(level: int = logging.INFO) -> None:
    """
    Send log records to stdout in the package format; safe to call more than once
    """
    global _initialized
    if _initialized:
        return
    root = logging.getLogger()
    root.setLevel(level)

    handler = logging.StreamHandler(sys.stdout)
    handler.setLevel(level)
    formatter = logging.Formatter(
        "[%(asctime)s] [Belyi] [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S %z",
    )
    handler.setFormatter(formatter)
    root.addHandler(handler)
    _initialized = True


def use_color(stream: Optional[TextIO] = None) -> bool:
    """
    Colour only terminals, and never when NO_COLOR is set
    """
    if os.getenv("NO_COLOR"):
        return False
    stream = stream or sys.stdout
    return bool(getattr(stream, "isatty", None) and stream.isatty())


def paint(text: str, *colors: Color, stream: Optional[TextIO] = None) -> str:
    if not colors or not use_color(stream):
        return text
    return "".join(colors) + text + Color.RESET


def colorize(status: str, text: str, stream: Optional[TextIO] = None) -> str:
    return paint(text, STATUS_COLORS.get(status, Color.WHITE), stream=stream)
