"""Command line: ``streamgraph generate | solve | kernelize | bench``.

Exit codes: 0 success (a NO kernel verdict included), 2 usage, 3 stream
model mismatch, 4 budget exceeded, 5 I/O or file format.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .bench import ALGORITHMS, default_suite, load_suite, random_gadget_inputs, rows_to_csv, run_algorithm, run_suite
from .errors import BudgetExceededError, GadgetInputError, GraphFormatError, ModelMismatchError
from .gadgets import GadgetKind, build_gadget, write_sidecar
from .graph import read_graph, write_graph
from .kernel import kernelize as run_kernelize
from .stream import StreamModel, build_stream

EXIT_USAGE = 2
EXIT_MODEL = 3
EXIT_BUDGET = 4
EXIT_IO = 5

MODELS = click.Choice(["ea", "va", "al"], case_sensitive=False)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(fn):
    """Map library errors onto exit codes."""

    def wrapped(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ModelMismatchError as exc:
            _fail(EXIT_MODEL, str(exc))
        except BudgetExceededError as exc:
            _fail(EXIT_BUDGET, str(exc))
        except GraphFormatError as exc:
            _fail(EXIT_IO, str(exc))
        except (GadgetInputError, ValueError) as exc:
            _fail(EXIT_USAGE, str(exc))
        except OSError as exc:
            _fail(EXIT_IO, str(exc))

    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


def read_modulator(path: str) -> list[int]:
    """Whitespace-separated vertex ids; ``#`` starts a comment."""
    ids = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        for tok in line.split():
            try:
                ids.append(int(tok))
            except ValueError:
                raise GraphFormatError(f"modulator file {path}: {tok!r} is not a vertex id") from None
    return ids


def _emit(data, fmt: str = "json") -> None:
    click.echo(json.dumps(data, indent=2 if fmt == "json" else None))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Multi-pass graph stream algorithms with pass and bit accounting."""


@main.command()
@click.option("--kind", required=True, help="Gadget kind, e.g. simple-al, cycles, windmill-perm.")
@click.option("--n", "n", type=int, required=True, help="Input size (power of two for Permutation kinds).")
@click.option("--x", "x", help="Alice's bit string (Disjointness).")
@click.option("--y", "y", help="Bob's bit string (Disjointness).")
@click.option("--pi", help="Alice's permutation as a comma list (Permutation).")
@click.option("--j", "j", type=int, help="Bob's index (Permutation).")
@click.option("--seed", type=int, help="Draw random inputs instead of --x/--y or --pi/--j.")
@click.option("--out", type=click.Path(dir_okay=False), help="Graph file; the sidecar goes to <out>.json.")
@_guard
def generate(kind, n, x, y, pi, j, seed, out) -> None:
    """Write a gadget graph file and its JSON sidecar."""
    try:
        gk = GadgetKind.parse(kind)
    except GadgetInputError as exc:
        raise click.BadParameter(str(exc), param_hint="--kind") from None
    if seed is not None:
        inputs = random_gadget_inputs(gk, n, seed)
    elif gk.is_perm:
        if pi is None or j is None:
            raise click.UsageError("Permutation kinds need --pi and --j (or --seed)")
        inputs = {"pi": pi, "j": j}
    else:
        if x is None or y is None:
            raise click.UsageError("Disjointness kinds need --x and --y (or --seed)")
        inputs = {"x": x, "y": y}
    inst = build_gadget(gk, **inputs)
    if inst.n != n:
        raise click.UsageError(f"inputs describe n={inst.n}, but --n is {n}")
    out = out or f"{gk.value}-n{n}.graph"
    write_graph(inst.graph, out)
    sidecar = out + ".json"
    write_sidecar(inst, sidecar)
    _emit({"graph": out, "sidecar": sidecar, "vertices": inst.graph.n, "edges": inst.graph.m, "answer": inst.answer})


@main.command()
@click.option("--problem", type=click.Choice(["diameter", "connectivity"]), help="Checked against the algorithm.")
@click.option("--algorithm", required=True, type=click.Choice(sorted(ALGORITHMS)))
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False))
@click.option("--modulator", type=click.Path(dir_okay=False), help="File with the modulator's vertex ids.")
@click.option("--ell", type=int, help="Clique count bound for the cliques algorithms.")
@click.option("--k", "k", type=int, help="Cover size bound for connectivity-vc without a modulator.")
@click.option("--passes", type=int, default=1, show_default=True, help="Pass count for connectivity-split.")
@click.option("--model", type=MODELS, default="al", show_default=True)
@click.option("--seed", type=int, help="Seed for the vertex and neighbour order of the stream.")
@_guard
def solve(problem, algorithm, graph_path, modulator, ell, k, passes, model, seed) -> None:
    """Run one streaming algorithm and print its report as JSON."""
    algo = ALGORITHMS[algorithm]
    if problem is not None and problem != algo.problem:
        raise click.UsageError(f"{algorithm} solves {algo.problem}, not {problem}")
    X = read_modulator(modulator) if modulator else None
    if algo.needs_modulator and X is None:
        raise click.UsageError(f"{algorithm} needs --modulator")
    if algo.needs_ell and ell is None:
        raise click.UsageError(f"{algorithm} needs --ell")
    graph = read_graph(graph_path)
    stream = build_stream(graph, StreamModel.parse(model), seed, seed)
    report = run_algorithm(algorithm, stream, X, ell, k, passes)
    _emit(report.to_json())


@main.command()
@click.option("--graph", "graph_path", required=True, type=click.Path(dir_okay=False))
@click.option("--k", "k", type=click.IntRange(min=0), required=True)
@click.option("--model", type=MODELS, default="al", show_default=True)
@click.option("--seed", type=int, help="Seed for the vertex and neighbour order of the stream.")
@click.option("--out", type=click.Path(dir_okay=False), help="Kernel graph file; provenance goes to <out>.json.")
@click.option("--cached/--recompute", default=False, help="Materialise intermediate streams (same pass counts).")
@_guard
def kernelize(graph_path, k, model, seed, out, cached) -> None:
    """Shrink a Vertex Cover instance to at most 2k vertices, or answer NO."""
    graph = read_graph(graph_path)
    result = run_kernelize(build_stream(graph, StreamModel.parse(model), seed, seed), k, cached=cached)
    prov = result.provenance()
    if out and result.graph is not None:
        write_graph(result.graph, out)
        prov["kernel"] = out
    if out:
        Path(out + ".json").write_text(json.dumps(prov, indent=2) + "\n")
    _emit(prov)


@main.command()
@click.option("--suite", "suite_path", type=click.Path(dir_okay=False), help="JSON suite; defaults to the built-in one.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the table here instead of stdout.")
@_guard
def bench(suite_path, fmt, out) -> None:
    """Run a benchmark suite and print one row per (instance, algorithm)."""
    suite = load_suite(Path(suite_path).read_text()) if suite_path else default_suite()
    rows = run_suite(suite)
    text = rows_to_csv(rows) if fmt == "csv" else json.dumps(rows, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


if __name__ == "__main__":
    main()
