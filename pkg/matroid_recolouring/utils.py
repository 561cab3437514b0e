from enum import Enum, IntEnum


class SchedulerType(str, Enum):
    SYNCHRONOUS = "synchronous"
    THREADS = "threads"


class CrossingCase(str, Enum):
    EMPTY = "empty"
    STAR = "star"
    PAIR = "pair"
    UNEXPECTED = "unexpected"


class PathMethod(str, Enum):
    CONSTRUCTIVE = "constructive"
    SEARCH = "search"


class ExitCode(IntEnum):
    OK = 0
    NO = 1
    USAGE = 2
    CAPACITY = 3
