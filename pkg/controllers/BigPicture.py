import os
import sys
from fractions import Fraction
from typing import Dict, List

import numpy as np
import pandas as pd

from models.AppConfig import AppConfig
from models.Arithmetic import RatMat2, alpha, parse_matrix
from models.Congruence import (
    GroupElement,
    act,
    atkin_lehner_rep,
    in_gamma0,
    in_normalizer,
    invariant_tree,
    maps_onto,
    normalizer_h,
    orbit,
    random_element,
    snake,
    snake_envelope,
    thread,
)
from models.Errors import DomainError, FormatError
from models.Picture import NU1, Vertex, ball, geodesic, graph_document, hyperdistance, neighbors, nu, p_adic_distance, sphere
from models.QSeries import QSeries, evaluate, faber, named_series
from models.Replication import (
    ReplicateFamily,
    is_replicable,
    load_mckay_thompson,
    max_replicate_precision,
    mckay_thompson_frame,
    replicate,
    required_precision,
)
from models.Spectral import (
    DeterminantObservable,
    Kernel,
    StateVector,
    classes,
    convolve,
    gibbs_expectation,
    hecke_apply,
    partition_function,
    phase_operator,
    project,
    represent,
    time_evolve,
)
from models.enums.ProjectionKind import ProjectionKind
from models.enums.SpaceMode import SpaceMode
from models.helper.LogHelper import Logger
from models.helper.TextBoxHelper import TextBox
from utils.BigPicture import compare, fraction_text, truncate
from views.BigPicture import RichText
from views.GraphExport import export_graph, render_document, to_json

README = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "README.md")
DEFAULT_TIMES = (0.5, 1.0, float(np.pi))


class BigPicture(AppConfig):
    def __init__(self, argv=None, **kwargs):
        super(BigPicture, self).__init__(argv, **kwargs)
        self.text_box = TextBox(80, 26)

    def run(self) -> int:
        if self.cli_args["version"]:
            print(self.get_version_from_readme(README))
            return 0

        handler = getattr(self, "_" + self.command.replace("-", "_"))
        Logger.debug(f"running {self.command}")
        result = handler()
        return 0 if result is None else result

    # output

    def _emit(self, document: dict, text: str = None, renderable=None) -> None:
        if self.json or (text is None and renderable is None):
            sys.stdout.write(to_json(document) + "\n")
        elif renderable is not None:
            RichText.print(renderable)
        else:
            sys.stdout.write(text + "\n")

    def _emit_graph(self, title: str, document: dict, vertices, graph_format: str = None) -> None:
        if graph_format is not None:
            sys.stdout.write(render_document(document, graph_format))
            return
        self._emit(document, renderable=RichText.vertex_table(title, vertices))

    # helpers

    def _vertex(self, name: str) -> Vertex:
        return Vertex.parse(self.cli_args[name])

    def _generators(self) -> List[GroupElement]:
        return [GroupElement.parse(text) for text in self.cli_args["gen"]]

    def _series(self, T: int) -> QSeries:
        label = self.cli_args["label"]
        path = self.cli_args.get("series")
        if path:
            loaded = load_mckay_thompson(path)
            if label not in loaded:
                raise DomainError(f"class {label} not found in {path}")
            return loaded[label]
        return named_series(label, T)

    def _seed(self, offset: int):
        return None if self.seed is None else self.seed + offset

    # big picture

    def _canon(self):
        m = parse_matrix(self.cli_args["matrix"])
        v = Vertex.parse(self.cli_args["matrix"])
        document = {"schema": "bp/1", "id": v.id, "det": v.det, "alpha": fraction_text(alpha(m))}
        self._emit(document, text=v.id)

    def _dist(self):
        u, v = self._vertex("u"), self._vertex("v")
        p = self.cli_args.get("p")
        distance = hyperdistance(u, v) if p is None else p_adic_distance(u, v, p)
        document = {"schema": "bp/1", "u": u.id, "v": v.id, "distance": distance}
        if p is not None:
            document["p"] = p
        self._emit(document, text=str(distance))

    def _neighbors(self):
        v, p = self._vertex("vertex"), self.cli_args["p"]
        result = neighbors(v, p)
        self._emit_graph(f"neighbours of {v} at p = {p}", graph_document(result, center=v.id, p=p), result)

    def _sphere(self):
        center, n = self._vertex("center"), self.cli_args["n"]
        result = sphere(center, n)
        self._emit_graph(f"sphere({center}, {n})", graph_document(result, center=center.id, n=n), result)

    def _ball(self):
        center, radius = self._vertex("center"), self.cli_args["radius"]
        result = ball(center, radius)
        self._emit_graph(f"ball({center}, {radius})", graph_document(result, center=center.id, radius=radius), result)

    def _geodesic(self):
        path = geodesic(self._vertex("u"), self._vertex("v"))
        document = {"schema": "bp/1", "vertices": [v.id for v in path], "steps": path.steps}
        self._emit(document, text=" -> ".join(v.id for v in path))

    # congruence groups

    def _thread(self):
        result = thread(self.cli_args["N"])
        self._emit_graph(f"thread({result.N})", result.to_document(), result.vertices, self.cli_args["format"])

    def _snake(self):
        N = self.cli_args["N"]
        if N > self.max_snake_level:
            raise DomainError(f"level {N} exceeds max_snake_level {self.max_snake_level}")

        if self.cli_args["envelope"]:
            result = snake_envelope(N, self.threads_hint)
        else:
            result = snake(N, self.threads_hint)

        self.text_box.summary(f"snake({N})", {"envelope": bool(result.envelope), "vertices": len(result), "threads hint": self.threads_hint})
        self._emit_graph(f"snake({N})", result.to_document(), result.vertices, self.cli_args["format"])

    def _al(self):
        N, e = self.cli_args["N"], self.cli_args["e"]
        w = atkin_lehner_rep(N, e)
        document = {
            "schema": "bp/1",
            "N": N,
            "e": e,
            "matrix": w.to_text(),
            "preserves_thread": maps_onto(w, thread(N).vertices),
            "square_in_gamma0": in_gamma0(w @ w, N),
        }
        self._emit(document, text=w.to_text())

    def _normalizer(self):
        N = self.cli_args["N"]
        g = GroupElement.parse(self.cli_args["g"])
        member = in_normalizer(g, N)
        document = {"schema": "bp/1", "N": N, "g": g.to_text(), "h": normalizer_h(N), "member": member}
        self._emit(document, text="yes" if member else "no")

    def _stab_check(self):
        N, samples = self.cli_args["N"], self.cli_args["samples"]
        if N > self.max_snake_level:
            raise DomainError(f"level {N} exceeds max_snake_level {self.max_snake_level}")

        fixed = sorted({NU1, nu(N)} | set(thread(N).vertices) | set(snake(N, self.threads_hint).vertices))
        failures = []
        for i in range(samples):
            g = random_element(N, seed=self._seed(i), word_length=3)
            moved = [v.id for v in fixed if act(g, v) != v]
            if moved:
                failures.append({"g": g.to_text(), "moved": moved})

        ok = not failures
        document = {"schema": "bp/1", "N": N, "samples": samples, "vertices": len(fixed), "ok": ok, "failures": failures}
        self.text_box.summary(f"stabilizer check, level {N}", {"samples": samples, "fixed vertices": len(fixed), "ok": ok})
        self._emit(document, text=f"{samples} elements of Gamma0({N}) fix {len(fixed)} vertices: {'yes' if ok else 'no'}")
        return 0 if ok else 1

    def _orbit(self):
        start = self._vertex("vertex")
        points = orbit(self._generators(), start, self.cap)
        self._emit_graph(f"orbit of {start}", graph_document(points, root=start.id, kind="orbit"), points)

    def _invariant_tree(self):
        document = invariant_tree(self._generators(), self.cap)
        text = "\n".join(v["id"] for v in document["vertices"])
        self._emit(document, text=text)

    # spectral

    def _hecke(self):
        xi = hecke_apply(StateVector.delta(self._vertex("vertex")), self.cli_args["N"])
        self._emit(xi.to_document(), renderable=RichText.state_table(f"T_{self.cli_args['N']}", xi))

    def _project(self):
        kind = ProjectionKind.convert_to_enum(self.cli_args["kind"])
        N = self.cli_args["N"]
        if kind == ProjectionKind.SNAKE and N > self.max_snake_level:
            raise DomainError(f"level {N} exceeds max_snake_level {self.max_snake_level}")

        xi = StateVector.uniform(ball(NU1, self.cli_args["radius"]))
        result = project(xi, kind, N, self.threads_hint)
        self._emit(result.to_document(), renderable=RichText.state_table(f"{kind.symbol}({N})", result))

    def _random_kernel(self, rng: np.random.Generator, size: int) -> Kernel:
        values = {}
        for _ in range(size):
            r1 = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
            g = RatMat2(r1, 0, 0, r1 * int(rng.integers(1, 5)))
            values[g] = complex(rng.normal(), rng.normal())
        kernel = {}
        for g, a in values.items():
            kernel.update(Kernel.delta(g, a).values)
        return Kernel(kernel)

    def _evolve_check(self):
        rng = np.random.default_rng(self.seed)
        size = self.cli_args["kernel_size"]
        f = self._random_kernel(rng, size)
        kernels = {"kernel": f, "product": convolve(f, self._random_kernel(rng, 2))}

        xi = StateVector.uniform([c for n in (1, 2, 3) for c in classes(n, SpaceMode.COSET)], SpaceMode.COSET)
        times = self.cli_args.get("t") or list(DEFAULT_TIMES)

        rows = []
        for name, kernel in kernels.items():
            for t in times:
                lhs = phase_operator(represent(kernel, phase_operator(xi, -t)), t)
                rhs = represent(time_evolve(kernel, t), xi)
                residual = (lhs - rhs).norm()
                rows.append({"kernel": name, "t": t, "residual": residual, "ok": residual <= self.tolerance})

        ok = all(row["ok"] for row in rows)
        document = {"schema": "bp/1", "tolerance": self.tolerance, "ok": ok, "checks": rows}
        text = "\n".join(f"{row['kernel']} t={truncate(row['t'], 4)} {compare(row['residual'], self.tolerance, 'residual', 12)}" for row in rows)
        self._emit(document, text=text)
        return 0 if ok else 1

    def _partition(self):
        mode = SpaceMode.convert_to_enum(self.cli_args["mode"])
        rows = []
        for beta in self.cli_args["beta"]:
            for X in self.cli_args["X"]:
                rows.append({"beta": beta, "X": X, "mode": mode.to_text, "value": partition_function(beta, X, mode)})

        if self.json:
            self._emit({"schema": "bp/1", "rows": rows})
        else:
            sys.stdout.write(pd.DataFrame(rows, columns=["beta", "X", "mode", "value"]).to_csv(index=False))

    def _gibbs(self):
        mode = SpaceMode.convert_to_enum(self.cli_args["mode"])
        beta, X = self.cli_args["beta"], self.cli_args["X"]
        value = gibbs_expectation(DeterminantObservable(), beta, X, mode)
        document = {"schema": "bp/1", "observable": "det", "beta": beta, "X": X, "mode": mode.to_text, "value": value}
        self._emit(document, text=repr(value))

    # q-series

    def _qseries(self):
        kind = self.cli_args["kind"]
        f = named_series(kind, self.terms)
        if self.cli_args["csv"]:
            if not f.is_normalized_principal():
                raise DomainError(f"{kind} is not of the form q^-1 + a1 q + ..., csv output needs a class series")
            sys.stdout.write(mckay_thompson_frame({kind: f}).to_csv(index=False))
            return
        self._emit(f.to_document(), renderable=RichText.series_table(kind, f))

    def _faber(self):
        k = self.cli_args["k"]
        f = self._series(k)
        polynomial = faber(f, k)
        document = {
            "schema": "bp/1",
            "class": self.cli_args["label"],
            "k": k,
            "coefficients": [fraction_text(c) for c in polynomial.coefficients],
            "polynomial": polynomial.to_text(),
        }
        self._emit(document, text=polynomial.to_text())

    def _replicate(self):
        k = self.cli_args["k"]
        base = self._series(required_precision(k, self.terms))
        T = min(self.terms, max_replicate_precision(base, k))
        if T < 1:
            raise DomainError(f"f^({k}) needs the base through q^{required_precision(k, 1)}, have q^{base.precision}")

        series = replicate(ReplicateFamily(base), k, T)
        document = series.to_document()
        document.update({"class": self.cli_args["label"], "k": k})
        self._emit(document, renderable=RichText.series_table(f"{self.cli_args['label']}^({k})", series))

    def _verify_replicable(self):
        k_max = self.cli_args["kmax"]
        base = self._series(required_precision(k_max, self.terms))
        try:
            samples = [complex(text) for text in self.cli_args.get("sample") or []]
        except ValueError as err:
            raise FormatError(f"malformed sample point: {err}")

        report = is_replicable(base, k_max, self.terms, samples, self.tolerance)
        rows: Dict[str, object] = {"replicable": report.replicable, "k_max": k_max, "terms": self.terms}
        for failure in report.failures():
            rows[f"k = {failure.k}"] = failure.failure
        self.text_box.summary(f"replicability of {self.cli_args['label']}", rows)

        document = report.to_document()
        document["class"] = self.cli_args["label"]
        self._emit(document, renderable=RichText.report_table(f"replicability of {self.cli_args['label']}", report))

    def _eval(self):
        try:
            z = complex(self.cli_args["z"])
        except ValueError:
            raise FormatError(f"malformed point {self.cli_args['z']!r}")

        f = self._series(self.terms)
        result = evaluate(f, z, dps=self.cli_args["dps"])
        document = {
            "schema": "bp/1",
            "class": self.cli_args["label"],
            "z": {"re": z.real, "im": z.imag},
            "re": result.value.real,
            "im": result.value.imag,
            "tail_bound": result.tail_bound,
        }
        sign = "+" if result.value.imag >= 0 else "-"
        text = f"{truncate(result.value.real, 8)} {sign} {truncate(abs(result.value.imag), 8)}i (tail < {result.tail_bound:.3e})"
        self._emit(document, text=text)

    def _export(self):
        center = self._vertex("center")
        sys.stdout.write(export_graph(ball(center, self.cli_args["radius"]), self.cli_args["format"]))


def run(argv=None) -> int:
    """Exit code: 0 on success, 1 on a domain error or failed check, 2 on a usage error"""

    try:
        app = BigPicture(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else 2
    except (TypeError, ValueError) as err:
        sys.stderr.write(f"bp: error: {err}\n")
        return 2

    try:
        return app.run()
    except DomainError as err:
        Logger.debug(f"{app.command} failed: {err}")
        sys.stderr.write(f"bp: {err}\n")
        return 1
