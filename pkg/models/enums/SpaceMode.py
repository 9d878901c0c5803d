from enum import Enum


class SpaceMode(Enum):
    VERTEX = "vertex", "v", "projective"
    COSET = "coset", "c", "lattice"

    def __init__(self, text, *aliases):
        self.text = text

    @staticmethod
    def convert_to_enum(value):
        for mode in SpaceMode:
            for enum_value in mode.value:
                if enum_value == value:
                    return mode
        raise ValueError("Invalid SpaceMode")

    @property
    def to_text(self):
        return self.text
