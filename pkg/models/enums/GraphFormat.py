from enum import Enum


class GraphFormat(Enum):
    DOT = "dot", "graphviz", ".dot"
    JSON = "json", "bp/1", ".json"

    def __init__(self, text, *aliases):
        self.text = text

    @staticmethod
    def convert_to_enum(value):
        for graph_format in GraphFormat:
            for enum_value in graph_format.value:
                if enum_value == value:
                    return graph_format
        raise ValueError("Invalid GraphFormat")

    @property
    def to_text(self):
        return self.text
