from enum import Enum


class ProjectionKind(Enum):
    SPHERE = "sphere", "P_N"
    THREAD = "thread", "P_t"
    SNAKE = "snake", "P_s"

    def __init__(self, text, symbol):
        self.text = text
        self.symbol = symbol

    @staticmethod
    def convert_to_enum(value):
        for kind in ProjectionKind:
            for enum_value in kind.value:
                if enum_value == value:
                    return kind
        raise ValueError("Invalid ProjectionKind")

    @property
    def to_text(self):
        return self.text
