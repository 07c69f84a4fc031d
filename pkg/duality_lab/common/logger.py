import datetime
import os
import platform
import sys

import colorama

colorama.init(wrap=False)

TRACE_COLOR = 12
DEBUG_COLOR = 2
INFO_COLOR = 4
DEPRECATED_COLOR = 7
WARN_COLOR = 3
ERROR_COLOR = 9
FATAL_COLOR = 1

if platform.system() == 'Windows':
    TRACE_COLOR = colorama.Fore.WHITE
    DEBUG_COLOR = colorama.Fore.GREEN
    INFO_COLOR = colorama.Fore.CYAN
    DEPRECATED_COLOR = colorama.Fore.LIGHTBLUE_EX
    WARN_COLOR = colorama.Fore.YELLOW
    ERROR_COLOR = colorama.Fore.LIGHTRED_EX
    FATAL_COLOR = colorama.Fore.RED

TRACE = 0
DEBUG = 2
INFO = 3
DEPRECATED = 4
WARN = 5
ERROR = 6
FATAL = 7

LOG_LEVEL_ENV = 'DUALITY_LAB_LOG_LEVEL'

logger_levels = {
    TRACE: 'TRACE',
    DEBUG: 'DEBUG',
    INFO: 'INFO',
    DEPRECATED: 'DEPRECATED',
    WARN: 'WARN',
    ERROR: 'ERROR',
    FATAL: 'FATAL'
}


def level_from_name(name: str, default: int = INFO) -> int:
    for level, level_name in logger_levels.items():
        if level_name == name.strip().upper():
            return level
    return default


def default_level() -> int:
    return level_from_name(os.getenv(LOG_LEVEL_ENV, 'INFO'))


class Logger:
    """
    Colored line logger, one instance per module channel
    Lines go to stderr, reports own stdout
    """

    def __init__(self, channel: str, level: int = None):
        self._channel = channel
        self._level = level if level is not None else default_level()
        self._node = platform.node()

    def __log(self, color, level: int, msg: str) -> None:
        if level >= self._level:
            ts = datetime.datetime.now().strftime("%d/%m/%Y %H:%M:%S")
            if platform.system() == "Windows":
                sys.stderr.write("{}[{}][{}][{}][{}]: {}{}\n".format(
                    color, ts, self._node, logger_levels[level], self._channel, msg, colorama.Fore.RESET))
            else:
                sys.stderr.write(u"\u001b[1;38;5;{}m[{}][{}][{}][{}]: {}\u001b[0m\n".format(
                    color, ts, self._node, logger_levels[level], self._channel, msg))
            sys.stderr.flush()

    def trace(self, msg: str) -> None:
        self.__log(TRACE_COLOR, TRACE, msg)

    def debug(self, msg: str) -> None:
        self.__log(DEBUG_COLOR, DEBUG, msg)

    def info(self, msg: str) -> None:
        self.__log(INFO_COLOR, INFO, msg)

    def deprecated(self, msg: str) -> None:
        self.__log(DEPRECATED_COLOR, DEPRECATED, msg)

    def warn(self, msg: str) -> None:
        self.__log(WARN_COLOR, WARN, msg)

    def error(self, msg: str) -> None:
        self.__log(ERROR_COLOR, ERROR, msg)

    def fatal(self, msg: str) -> None:
        self.__log(FATAL_COLOR, FATAL, msg)

    def set_log_level(self, level: int) -> None:
        self._level = level

    def log_level(self) -> int:
        return self._level

    def channel(self) -> str:
        return self._channel
