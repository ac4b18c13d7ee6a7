from enum import IntEnum


class CellState(IntEnum):
    UNKNOWN = 0
    FREE = 1
    OCCUPIED = 2
