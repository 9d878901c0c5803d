from typing import Iterable

from rich.console import Console
from rich.table import Table, Text

from utils.BigPicture import fraction_text, truncate


class RichText:
    @staticmethod
    def styled_text(input: str = "", color: str = "white", disabled: bool = False) -> Text:
        if disabled or input == "":
            return None

        text = Text(input)
        text.stylize(color, 0, len(input))
        return text

    @staticmethod
    def ok_text(ok: bool) -> Text:
        return RichText.styled_text("yes" if ok else "no", "green" if ok else "red1")

    @staticmethod
    def vertex_table(title: str, vertices: Iterable) -> Table:
        table = Table(title=title, show_header=True, header_style="bold")
        table.add_column("vertex", style="cyan")
        table.add_column("det", justify="right", style="yellow")
        for v in vertices:
            table.add_row(v.id, str(v.det))
        return table

    @staticmethod
    def state_table(title: str, xi) -> Table:
        table = Table(title=title, show_header=True, header_style="bold")
        table.add_column(xi.mode.to_text, style="cyan")
        table.add_column("re", justify="right")
        table.add_column("im", justify="right")
        for x in xi.support:
            table.add_row(x.id, truncate(xi[x].real, 6), truncate(xi[x].imag, 6))
        return table

    @staticmethod
    def series_table(title: str, f, limit: int = None) -> Table:
        table = Table(title=title, show_header=True, header_style="bold")
        table.add_column("n", justify="right", style="yellow")
        table.add_column("coefficient", justify="right", style="cyan")
        for count, (n, c) in enumerate(f.items()):
            if limit is not None and count >= limit:
                break
            table.add_row(str(n), fraction_text(c))
        table.caption = f"known through q^{f.precision}" if f.precision is not None else "exact"
        return table

    @staticmethod
    def report_table(title: str, report) -> Table:
        table = Table(title=title, show_header=True, header_style="bold")
        table.add_column("k", justify="right", style="yellow")
        table.add_column("replicates")
        table.add_column("terms", justify="right")
        table.add_column("integral")
        table.add_column("reason", style="dark_orange")
        for result in report.results:
            table.add_row(
                str(result.k),
                RichText.ok_text(result.ok),
                str(result.terms),
                RichText.ok_text(result.integral),
                result.reason or "",
            )
        return table

    @staticmethod
    def print(renderable, console: Console = None) -> None:
        (console or Console()).print(renderable)
