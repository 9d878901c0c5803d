"""Export induced subgraphs of the big picture for graphviz or scripting"""

import json
from typing import Iterable, Union

from models.Picture import Vertex, graph_document
from models.enums.GraphFormat import GraphFormat


def to_json(document: dict) -> str:
    return json.dumps(document, indent=2)


def to_dot(document: dict, name: str = "bigpicture") -> str:
    """digraph with one rank = same layer per determinant"""

    lines = [f"digraph {name} {{", "\tgraph [rankdir=TB]"]

    layers = {}
    for vertex in document["vertices"]:
        layers.setdefault(vertex["det"], []).append(vertex["id"])

    for det in sorted(layers):
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for vertex_id in layers[det]:
            lines.append(f'\t\t"{vertex_id}" [label="{vertex_id}", shape = box];')
        lines.append("\t}")

    for edge in document["edges"]:
        lines.append(f'\t"{edge["u"]}" -> "{edge["v"]}" [label="{edge["p"]}"];')

    lines.append("}")
    return "\n".join(lines) + "\n"


def render_document(document: dict, graph_format: Union[GraphFormat, str]) -> str:
    if isinstance(graph_format, str):
        graph_format = GraphFormat.convert_to_enum(graph_format)
    if graph_format == GraphFormat.DOT:
        return to_dot(document)
    return to_json(document) + "\n"


def export_graph(vertices: Iterable[Vertex], graph_format: Union[GraphFormat, str]) -> str:
    return render_document(graph_document(vertices), graph_format)
