"""Algorithm registry shared by the CLI, and the benchmark suite runner."""

from __future__ import annotations

import csv
import io
import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .accounting import MemoryLedger, PassMeter, Telemetry
from .connectivity import connectivity_cliques, connectivity_split, connectivity_unionfind, connectivity_vc
from .diameter_cliques import diameter_multipass_cliques, diameter_onepass_cliques
from .diameter_vc import diameter_multipass, diameter_onepass
from .errors import StreamGraphError
from .gadgets import GadgetKind, build_gadget
from .gadgets.disj import NONZERO_REQUIRED, input_length
from .graph import Graph
from .kernel import kernelize
from .planted import planted_cliques, planted_vertex_cover
from .stream import Stream, build_stream


@dataclass(frozen=True)
class Algorithm:
    name: str
    problem: str
    run: Callable[..., Any]
    needs_modulator: bool = False
    needs_ell: bool = False


ALGORITHMS = {
    a.name: a
    for a in [
        Algorithm("diameter-vc", "diameter", lambda s, X, ell, k, p, m, l: diameter_multipass(s, X, m, l), True),
        Algorithm("diameter-vc-onepass", "diameter", lambda s, X, ell, k, p, m, l: diameter_onepass(s, X, m, l), True),
        Algorithm(
            "diameter-cliques",
            "diameter",
            lambda s, X, ell, k, p, m, l: diameter_multipass_cliques(s, X, ell, m, l),
            True,
            True,
        ),
        Algorithm(
            "diameter-cliques-onepass",
            "diameter",
            lambda s, X, ell, k, p, m, l: diameter_onepass_cliques(s, X, ell, m, l),
            True,
            True,
        ),
        Algorithm("connectivity-vc", "connectivity", lambda s, X, ell, k, p, m, l: connectivity_vc(s, X, m, l, k=k)),
        Algorithm(
            "connectivity-cliques",
            "connectivity",
            lambda s, X, ell, k, p, m, l: connectivity_cliques(s, X, ell, m, l),
            True,
            True,
        ),
        Algorithm("connectivity-unionfind", "connectivity", lambda s, X, ell, k, p, m, l: connectivity_unionfind(s, m, l)),
        Algorithm("connectivity-split", "connectivity", lambda s, X, ell, k, p, m, l: connectivity_split(s, m, l, passes=p)),
    ]
}


def answer_text(value: Any) -> Any:
    """JSON/CSV rendering of an answer: infinite diameters become the string ``"infinite"``."""
    if isinstance(value, float):
        return "infinite" if math.isinf(value) else int(value)
    return value


@dataclass
class RunReport:
    algorithm: str
    problem: str
    model: str
    answer: Any
    telemetry: Telemetry
    ms: float

    def to_json(self) -> dict:
        t = self.telemetry
        return {
            "algorithm": self.algorithm,
            "problem": self.problem,
            "model": self.model,
            "diameter" if self.problem == "diameter" else "connected": answer_text(self.answer),
            "passes": t.passes_used,
            "peak_bits": t.peak_bits,
            "pass_budget": t.pass_budget,
            "pass_formula": t.pass_formula,
            "bit_budget": None if t.bit_budget is None else round(t.bit_budget, 3),
            "bit_formula": t.bit_formula,
            "ms": round(self.ms, 3),
        }


def run_algorithm(
    name: str,
    stream: Stream,
    X: "list[int] | None" = None,
    ell: int | None = None,
    k: int | None = None,
    passes: int = 1,
) -> RunReport:
    algo = ALGORITHMS[name]
    if algo.needs_modulator and X is None:
        raise ValueError(f"{name} needs a modulator")
    if algo.needs_ell and ell is None:
        raise ValueError(f"{name} needs --ell")
    if name == "connectivity-vc" and X is None and k is None:
        raise ValueError("connectivity-vc needs a modulator or --k")
    meter, ledger = PassMeter(), MemoryLedger()
    start = time.perf_counter()
    answer = algo.run(stream, X, ell, k, passes, meter, ledger)
    ms = (time.perf_counter() - start) * 1000
    return RunReport(name, algo.problem, stream.model.name, answer, Telemetry.read(meter, ledger), ms)


# -- random gadget inputs -------------------------------------------------------


def random_gadget_inputs(kind: "GadgetKind | str", n: int, seed: int) -> dict:
    """Seeded inputs for ``kind``; about half of the Disjointness pairs are disjoint."""
    kind = GadgetKind.parse(kind)
    rng = random.Random(seed)
    if kind.is_perm:
        pi = list(range(1, n + 1))
        rng.shuffle(pi)
        log_n = max(n.bit_length() - 1, 1)
        return {"pi": pi, "j": rng.randint(1, n * log_n)}
    length = input_length(kind, n)
    nonzero = kind in NONZERO_REQUIRED
    while True:
        x, y = rng.getrandbits(length), rng.getrandbits(length)
        if rng.random() < 0.5:
            y &= ~x
        if not nonzero or (x and y):
            break
    return {"x": format(x, f"0{length}b"), "y": format(y, f"0{length}b")}


# -- suites ---------------------------------------------------------------------

CSV_COLUMNS = ["kind", "n", "k", "algorithm", "model", "answer", "passes", "peak_bits", "ms"]


@dataclass
class SuiteEntry:
    """One generator with its sizes, parameters and the algorithms to run on it.

    Generators: ``planted-vc`` (n, k), ``planted-cliques`` (n, k, ell),
    ``gadget:<kind>`` (n) and ``random-vc`` (n, k; a random graph with a
    planted cover, meant for ``kernelize``).
    """

    generator: str
    sizes: list[int]
    algorithms: list[str]
    k: list[int] = field(default_factory=lambda: [0])
    ell: int = 3
    model: str = "AL"
    repetitions: int = 1
    seed: int = 0

    @classmethod
    def from_json(cls, data: dict) -> "SuiteEntry":
        k = data.get("k", [0])
        return cls(
            generator=data["generator"],
            sizes=list(data["sizes"]),
            algorithms=list(data["algorithms"]),
            k=list(k) if isinstance(k, list) else [k],
            ell=int(data.get("ell", 3)),
            model=str(data.get("model", "AL")),
            repetitions=int(data.get("repetitions", 1)),
            seed=int(data.get("seed", 0)),
        )


def load_suite(text: str) -> list[SuiteEntry]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("suite", [])
    return [SuiteEntry.from_json(e) for e in data]


def default_suite() -> list[SuiteEntry]:
    """Every algorithm family at small scale, with k swept for the modulator-based solvers."""
    return [
        SuiteEntry("planted-vc", [200], ["diameter-vc", "diameter-vc-onepass", "connectivity-vc"], k=[1, 2, 3, 4, 5, 6]),
        SuiteEntry(
            "planted-cliques",
            [200],
            ["diameter-cliques", "diameter-cliques-onepass", "connectivity-cliques"],
            k=[1, 2, 3],
            ell=3,
        ),
        SuiteEntry("gadget:split-conn", [50], ["connectivity-split", "connectivity-unionfind"], model="VA"),
        SuiteEntry("random-vc", [200], ["kernelize"], k=[2, 4, 6]),
        SuiteEntry("random-vc", [200], ["kernelize"], k=[2, 4], model="EA"),
    ]


def _random_cover_graph(n: int, k: int, seed: int) -> Graph:
    rng = random.Random(seed)
    X = rng.sample(range(1, n + 1), min(n, k))
    g = Graph(n)
    for x in X:
        for _ in range(rng.randint(0, 3 * max(k, 1))):
            y = rng.randint(1, n)
            if y != x and not g.has_edge(x, y):
                g.add_edge(x, y)
    return g


def _instances(entry: SuiteEntry):
    for n in entry.sizes:
        for k in entry.k:
            for rep in range(entry.repetitions):
                seed = entry.seed * 1_000_003 + rep
                gen = entry.generator
                if gen == "planted-vc":
                    inst = planted_vertex_cover(n, k, seed)
                    yield gen, n, k, inst.graph, list(inst.X), entry.ell
                elif gen == "planted-cliques":
                    inst = planted_cliques(n, k, entry.ell, seed)
                    yield gen, n, k, inst.graph, list(inst.X), entry.ell
                elif gen == "random-vc":
                    yield gen, n, k, _random_cover_graph(n, k, seed), None, None
                elif gen.startswith("gadget:"):
                    kind = GadgetKind.parse(gen.split(":", 1)[1])
                    g = build_gadget(kind, **random_gadget_inputs(kind, n, seed)).graph
                    yield kind.value, n, "", g, None, None
                else:
                    raise ValueError(f"unknown generator {gen!r}")


def run_suite(suite: list[SuiteEntry], on_row: Callable[[dict], None] | None = None) -> list[dict]:
    """Run every (instance, algorithm) pair; failures become rows with an ``error:`` answer."""
    rows = []
    for entry in suite:
        for kind, n, k, graph, X, ell in _instances(entry):
            stream = build_stream(graph, entry.model, vertex_seed=entry.seed)
            for name in entry.algorithms:
                row = {"kind": kind, "n": n, "k": k, "algorithm": name, "model": stream.model.name}
                try:
                    if name == "kernelize":
                        start = time.perf_counter()
                        out = kernelize(stream, int(k), cached=True)
                        ms = (time.perf_counter() - start) * 1000
                        row.update(answer=out.verdict, passes=out.passes, peak_bits=out.peak_bits)
                    else:
                        rep = run_algorithm(name, stream, X, ell, k if k != "" else None)
                        ms = rep.ms
                        row.update(
                            answer=answer_text(rep.answer),
                            passes=rep.telemetry.passes_used,
                            peak_bits=rep.telemetry.peak_bits,
                        )
                    row["ms"] = round(ms, 3)
                except (StreamGraphError, ValueError, KeyError) as exc:
                    row.update(answer=f"error: {type(exc).__name__}: {exc}", passes="", peak_bits="", ms="")
                rows.append(row)
                if on_row:
                    on_row(row)
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


__all__ = [
    "ALGORITHMS",
    "CSV_COLUMNS",
    "RunReport",
    "SuiteEntry",
    "answer_text",
    "default_suite",
    "load_suite",
    "random_gadget_inputs",
    "rows_to_csv",
    "run_algorithm",
    "run_suite",
]
