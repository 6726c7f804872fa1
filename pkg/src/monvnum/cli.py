"""Command-line front end: input parsers, subcommands and report rendering."""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import corpus
from .assoc import (
    PrimeSet,
    StabilizationConfig,
    ass,
    ass_infty,
    ass_power,
    ass_product,
    ass_star,
    ass_sum_power,
)
from .core import (
    MAX_EXPONENT,
    AmbientRing,
    MonomialIdeal,
    MonomialPrime,
    alpha,
    format_exps,
    ideal_sum,
    is_equigenerated,
    power,
    product,
    support,
)
from .errors import BudgetExceededError, MonvnumError
from .oracle import DEFAULT_BUDGET, oracle_ass
from .structure import (
    Graph,
    Leaf,
    SplitTree,
    ci_ass,
    ci_v,
    ci_v_line,
    components,
    disjoint_sum_vbound,
    edge_ideal,
    edge_v_asymptotic,
    graph_component_count,
    validate_split_tree,
    vertex_split,
    vertex_splittable_v,
)
from .vnumber import (
    LinearFit,
    VTable,
    lower_bound,
    v_function,
    v_local,
    v_number,
    v_product,
    v_product_local,
    v_sum,
    v_sum_local,
)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_DISCREPANCY = 3


# ---------------------------------------------------------------------------
# parsing


class ParseError(MonvnumError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)|(?P<op>[\^*,()])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, line0: int = 1) -> list[_Tok]:
    out = []
    line, start, pos = line0, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            out.append(_Tok("nl", "\n", line, pos - start + 1))
            line, start = line + 1, m.end()
        elif kind == "name" or kind == "int":
            out.append(_Tok(kind, m.group(), line, pos - start + 1))
        elif kind == "op":
            out.append(_Tok(m.group(), m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(_Tok("end", "", line, pos - start + 1))
    return out


def parse_ring(text: str) -> AmbientRing:
    """Parse ``ring x y z`` (commas between names are also accepted)."""
    toks = [t for t in _tokenize(text) if t.kind not in ("nl", ",")]
    if not toks or toks[0].kind != "name" or toks[0].text != "ring":
        t = toks[0]
        raise ParseError("expected 'ring' declaration", t.line, t.col)
    names = []
    for t in toks[1:]:
        if t.kind == "end":
            break
        if t.kind != "name":
            raise ParseError(f"expected a variable name, got {t.text!r}", t.line, t.col)
        if t.text in names:
            raise ParseError(f"duplicate variable {t.text!r}", t.line, t.col)
        names.append(t.text)
    if not names:
        raise ParseError("ring declares no variables", toks[0].line, toks[0].col)
    return AmbientRing(names)


class _IdealParser:
    """Recursive descent over one ideal block.

    block   := '(' body ')' | body
    body    := '0' | gen ((',' | newline) gen)*
    gen     := factor ('*' factor)*
    factor  := name ('^' int)? | '1'
    """

    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def skip_newlines(self) -> None:
        while self.peek().kind == "nl":
            self.i += 1

    def fail(self, msg: str, t: _Tok | None = None) -> ParseError:
        t = t or self.peek()
        return ParseError(msg, t.line, t.col)

    def parse(self) -> list[list[tuple[str, int, _Tok]]] | None:
        self.skip_newlines()
        wrapped = self.peek().kind == "("
        if wrapped:
            self.take()
            self.skip_newlines()
        if self.peek().kind == "int" and self.peek().text == "0":
            self.take()
            gens = None
        else:
            gens = [self.gen()]
            while True:
                sep = self.peek().kind
                if sep not in (",", "nl"):
                    break
                self.take()
                self.skip_newlines()
                if self.peek().kind in ("end", ")"):
                    if sep == ",":
                        raise self.fail("expected a generator after ','")
                    break
                gens.append(self.gen())
        self.skip_newlines()
        if wrapped:
            if self.peek().kind != ")":
                raise self.fail("expected ')'")
            self.take()
            self.skip_newlines()
        if self.peek().kind != "end":
            raise self.fail(f"unexpected {self.peek().text!r}")
        return gens

    def gen(self) -> list[tuple[str, int, _Tok]]:
        factors = [self.factor()]
        while self.peek().kind == "*":
            self.take()
            factors.append(self.factor())
        return [f for f in factors if f[0]]

    def factor(self) -> tuple[str, int, _Tok]:
        t = self.take()
        if t.kind == "int":
            if t.text.lstrip("0") != "1":
                raise self.fail("the only numeric factor allowed is 1", t)
            return ("", 0, t)
        if t.kind != "name":
            raise self.fail(f"expected a variable, got {t.text or 'end of input'!r}", t)
        exp = 1
        if self.peek().kind == "^":
            self.take()
            e = self.take()
            if e.kind != "int":
                raise self.fail("expected an exponent after '^'", e)
            exp = int(e.text)
            if exp > MAX_EXPONENT:
                raise self.fail(f"exponent overflow: {exp} exceeds {MAX_EXPONENT}", e)
        return (t.text, exp, t)


def _parse_ideal_block(text: str, line0: int = 1):
    return _IdealParser(_tokenize(text, line0)).parse()


def _build_ideal(gens, ring: AmbientRing) -> MonomialIdeal:
    if gens is None:
        return MonomialIdeal.zero(ring)
    exps = []
    for g in gens:
        e = [0] * ring.n
        for name, a, tok in g:
            if name not in ring.variables:
                raise ParseError(f"unknown variable {name!r}", tok.line, tok.col)
            e[ring.index(name)] += a
            if e[ring.index(name)] > MAX_EXPONENT:
                raise ParseError(f"exponent overflow for {name!r}", tok.line, tok.col)
        exps.append(tuple(e))
    return MonomialIdeal.from_exponents(ring, exps)


def parse_ideal(text: str, ring: AmbientRing | None = None) -> MonomialIdeal:
    """Parse one ideal; a leading ``ring`` line overrides ``ring``, else it is inferred."""
    return parse_input(text, ring).ideals[0]


@dataclass(frozen=True)
class ParsedInput:
    ring: AmbientRing
    ideals: tuple[MonomialIdeal, ...]
    ring_inferred: bool
    graph: Graph | None = None


def _split_lines(text: str) -> list[tuple[int, str]]:
    return list(enumerate(text.split("\n"), start=1))


def parse_input(text: str, ring: AmbientRing | None = None) -> ParsedInput:
    """Optional ``ring`` line, then one or more ideals separated by ``---`` lines."""
    lines = _split_lines(text)
    body_start = 0
    for idx, (ln, raw) in enumerate(lines):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.split()[0] == "ring":
            ring = parse_ring("\n" * (ln - 1) + raw)
            body_start = idx + 1
        break
    blocks: list[tuple[int, list[str]]] = [(lines[body_start][0] if body_start < len(lines) else 1, [])]
    for ln, raw in lines[body_start:]:
        if raw.split("#", 1)[0].strip() == "---":
            blocks.append((ln + 1, []))
        else:
            blocks[-1][1].append(raw)
    parsed = []
    for line0, chunk in blocks:
        if not any(ln.split("#", 1)[0].strip() for ln in chunk):
            raise ParseError("empty ideal", line0, 1)
        parsed.append(_parse_ideal_block("\n".join(chunk), line0))
    inferred = ring is None
    if inferred:
        order: dict[str, None] = {}
        for gens in parsed:
            for g in gens or []:
                for name, _, _ in g:
                    order.setdefault(name)
        if not order:
            raise ParseError("cannot infer a ring: no variables appear", 1, 1)
        ring = AmbientRing(order)
    ideals = tuple(_build_ideal(g, ring) for g in parsed)
    return ParsedInput(ring, ideals, inferred)


def parse_graph(text: str) -> Graph:
    """One edge per line as two whitespace-separated names; a lone name is an isolated vertex."""
    order: dict[str, None] = {}
    edges = []
    for ln, raw in _split_lines(text):
        toks = [t for t in _tokenize(raw, ln) if t.kind not in ("nl", "end")]
        for t in toks:
            if t.kind != "name":
                raise ParseError(f"expected a vertex name, got {t.text!r}", t.line, t.col)
        if len(toks) > 2:
            raise ParseError("an edge line holds exactly two vertices", ln, toks[2].col)
        for t in toks:
            order.setdefault(t.text)
        if len(toks) == 2:
            if toks[0].text == toks[1].text:
                raise ParseError(f"loop at {toks[0].text!r}", ln, toks[1].col)
            edges.append((toks[0].text, toks[1].text))
    if not order:
        raise ParseError("empty graph", 1, 1)
    return Graph(order, edges)


def render_ring(ring: AmbientRing) -> str:
    return "ring " + " ".join(ring.variables)


def render_ideal(I: MonomialIdeal) -> str:
    if I.is_zero():
        return "0"
    return ", ".join(format_exps(I.ring, g) for g in I.gens)


def render_input(ring: AmbientRing, ideals: Sequence[MonomialIdeal]) -> str:
    """Canonical text that :func:`parse_input` maps back to the same values."""
    return "\n".join([render_ring(ring)] + ["\n---\n".join(render_ideal(I) for I in ideals)]) + "\n"


def render_graph(G: Graph) -> str:
    used = {v for e in G.edges for v in e}
    lines = [f"{a} {b}" for a, b in G.sorted_edges()]
    lines += [v for v in G.vertices if v not in used]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# configuration and reports


@dataclass(frozen=True)
class RunConfig:
    k_max: int = 6
    window: int = 2
    oracle_budget: int = DEFAULT_BUDGET
    output_format: str = "json"
    seed: int = 0
    parallelism: int = 1
    count: int = 20
    timing: bool = False

    def __post_init__(self):
        if self.window < 2:
            raise ValueError("--window must be at least 2")
        if self.k_max < self.window:
            raise ValueError(f"--kmax {self.k_max} is below --window {self.window}")
        if self.oracle_budget < 1 or self.parallelism < 1 or self.count < 1:
            raise ValueError("budgets, job counts and corpus sizes must be positive")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")


@dataclass
class Report:
    operation: str
    input_echo: str | None
    result: dict[str, Any]
    certified: bool
    per_k: list[dict[str, Any]] | None = None
    fit: dict[str, Any] | None = None
    discrepancies: list[str] = field(default_factory=list)
    runtime_ms: float | None = None

    def as_json(self) -> dict[str, Any]:
        out = {
            "schema_version": SCHEMA_VERSION,
            "operation": self.operation,
            "input_echo": self.input_echo,
            "result": self.result,
            "per_k": self.per_k,
            "fit": self.fit,
            "certified": self.certified,
            "runtime_ms": self.runtime_ms,
        }
        if self.discrepancies or self.operation.startswith(("verify", "repro")):
            out["discrepancies"] = self.discrepancies
        return out


def _prime_names(p: MonomialPrime) -> list[str]:
    return list(p.names)


def _primes(ps: PrimeSet) -> list[list[str]]:
    return [_prime_names(p) for p in ps]


def _fit_json(fit: LinearFit | None) -> dict[str, Any] | None:
    if fit is None:
        return None
    return {
        "slope": fit.slope,
        "intercept": fit.intercept,
        "vstab": fit.vstab,
        "certified": fit.certified,
        "source": fit.source,
    }


def render_report(report: Report, fmt: str) -> str:
    data = report.as_json()
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if report.per_k:
            keys = list(report.per_k[0])
            w.writerow(keys)
            for row in report.per_k:
                w.writerow([_csv_cell(row.get(k)) for k in keys])
        else:
            w.writerow(["field", "value"])
            for k, v in report.result.items():
                w.writerow([k, _csv_cell(v)])
            w.writerow(["certified", _csv_cell(report.certified)])
        return buf.getvalue()
    lines = [f"operation: {report.operation}"]
    for k, v in report.result.items():
        lines.append(f"{k}: {_text_cell(v)}")
    if report.per_k:
        lines.append("per k:")
        for row in report.per_k:
            lines.append("  " + "  ".join(f"{k}={_text_cell(v)}" for k, v in row.items()))
    if report.fit:
        f = report.fit
        start = "for large k" if f["vstab"] is None else f"from k = {f['vstab']}"
        lines.append(
            f"fit: v(I^k) = {f['slope']}k{f['intercept']:+d} {start}"
            f" ({'certified' if f['certified'] else 'heuristic'}, {f['source']})"
        )
    lines.append(f"certified: {'yes' if report.certified else 'no'}")
    if report.discrepancies:
        lines.append(f"discrepancies ({len(report.discrepancies)}):")
        lines += ["  " + d for d in report.discrepancies]
    if report.runtime_ms is not None:
        lines.append(f"runtime: {report.runtime_ms:.1f} ms")
    return "\n".join(lines) + "\n"


def _csv_cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def _text_cell(v: Any) -> str:
    if isinstance(v, list) and not v:
        return "none"
    if isinstance(v, list) and all(isinstance(x, str) and x.isidentifier() for x in v):
        return "(" + ",".join(v) + ")"
    if isinstance(v, list) and all(isinstance(x, (str, dict)) for x in v):
        return "; ".join(x if isinstance(x, str) else json.dumps(x, separators=(",", ":")) for x in v)
    if isinstance(v, list) and all(isinstance(x, list) for x in v):
        return " ".join("(" + ",".join(map(str, x)) + ")" for x in v)
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------------------
# subcommands on a parsed input


def _one(inp: ParsedInput) -> MonomialIdeal:
    if len(inp.ideals) != 1:
        raise ValueError(f"expected one ideal, got {len(inp.ideals)}")
    return inp.ideals[0]


def _two(inp: ParsedInput) -> tuple[MonomialIdeal, MonomialIdeal]:
    if len(inp.ideals) != 2:
        raise ValueError(f"expected two ideals separated by '---', got {len(inp.ideals)}")
    return inp.ideals[0], inp.ideals[1]


def _prime_arg(text: str | None, ring: AmbientRing) -> MonomialPrime:
    if not text:
        raise ValueError("--prime is required")
    names = [s.strip() for s in text.split(",") if s.strip()]
    for s in names:
        if s not in ring.variables:
            raise ValueError(f"--prime names unknown variable {s!r}")
    return MonomialPrime.from_names(ring, names)


def cmd_ass(inp: ParsedInput, cfg: RunConfig, args) -> Report:
    I = _one(inp)
    return Report("ass", None, {"primes": _primes(ass(I))}, True)


def cmd_ass_star(inp, cfg, args) -> Report:
    rep = ass_star(_one(inp), cfg.k_max)
    rows = [{"k": k, "primes": _primes(ps), "certified": True} for k, ps in rep.per_k.items()]
    return Report(
        "ass-star",
        None,
        {"union": _primes(rep.stable_set), "stable_from": rep.stable_from, "k_max": cfg.k_max},
        rep.verified,
        rows,
    )


def cmd_ass_infty(inp, cfg, args) -> Report:
    rep = ass_infty(_one(inp), StabilizationConfig(cfg.k_max, cfg.window))
    rows = [{"k": k, "primes": _primes(ps), "certified": True} for k, ps in rep.per_k.items()]
    result = {
        "stable_set": _primes(rep.stable_set),
        "stable_from": rep.stable_from,
        "window_satisfied": rep.window_satisfied,
        "notes": list(rep.notes),
    }
    return Report("ass-infty", None, result, rep.verified, rows)


def cmd_vnum(inp, cfg, args) -> Report:
    v, p = v_number(_one(inp))
    return Report("vnum", None, {"v": v, "prime": _prime_names(p)}, True)


def cmd_vnum_local(inp, cfg, args) -> Report:
    I = _one(inp)
    p = _prime_arg(args.prime, inp.ring)
    return Report("vnum-local", None, {"prime": _prime_names(p), "v": v_local(I, p)}, True)


def cmd_vfunction(inp, cfg, args) -> Report:
    table = v_function(_one(inp), cfg.k_max, jobs=cfg.parallelism)
    rows, fit = _table_and_fit(_one(inp), table)
    certified = table.fit is not None and table.fit.certified
    return Report(
        "vfunction", None, {"values": table.values, "notes": list(table.notes)}, certified, rows, fit
    )


def cmd_components(inp, cfg, args) -> Report:
    parts = components(_one(inp))
    return Report("components", None, {"components": [str(P) for P in parts], "count": len(parts)}, True)


def cmd_edge_ideal(inp, cfg, args) -> Report:
    if inp.graph is None:
        raise ValueError("edge-ideal needs --graph input")
    I = edge_ideal(inp.graph)
    slope, intercept = edge_v_asymptotic(inp.graph)
    result = {
        "ideal": render_ideal(I),
        "components": graph_component_count(inp.graph),
        "asymptotic_slope": slope,
        "asymptotic_intercept": intercept,
    }
    # the line holds for large k; the threshold is not known
    fit = {"slope": slope, "intercept": intercept, "vstab": None, "certified": True, "source": "edge ideal, large k"}
    return Report("edge-ideal", None, result, True, fit=fit)


def cmd_ci(inp, cfg, args) -> Report:
    I = _one(inp)
    line = ci_v_line(I)
    primes = _primes(ci_ass(I))
    rows = [{"k": k, "v": ci_v(I, k), "certified": True} for k in range(1, cfg.k_max + 1)]
    return Report("ci", None, {"ass": primes, "ass_stable_from": 1}, True, rows, _fit_json(line))


def _tree_json(tree: SplitTree) -> dict[str, Any]:
    if isinstance(tree, Leaf):
        return {"leaf": render_ideal(tree.ideal)}
    return {
        "variable": tree.variable_name,
        "ideal": render_ideal(tree.ideal),
        "left": _tree_json(tree.left),
        "right": _tree_json(tree.right),
    }


def cmd_vsplit(inp, cfg, args) -> Report:
    I = _one(inp)
    tree = vertex_split(I)
    result: dict[str, Any] = {"splittable": tree is not None, "tree": None if tree is None else _tree_json(tree)}
    rows = None
    fit = None
    if tree is not None and is_equigenerated(I):
        rows = [{"k": k, "v": vertex_splittable_v(I, k), "certified": True} for k in range(1, cfg.k_max + 1)]
        fit = {"slope": alpha(I), "intercept": -1, "vstab": 1, "certified": True, "source": "equigenerated vertex splittable"}
    result["equigenerated"] = is_equigenerated(I)
    return Report("vsplit", None, result, True, rows, fit)


def cmd_sum_v(inp, cfg, args) -> Report:
    I, J = _two(inp)
    rows = [
        {"k": k, "v": v_sum(I, J, k), "ass": _primes(ass_sum_power(I, J, k)), "certified": True}
        for k in range(1, cfg.k_max + 1)
    ]
    return Report("sum-v", None, {"k_max": cfg.k_max}, True, rows)


def cmd_product_v(inp, cfg, args) -> Report:
    I, J = _two(inp)
    rows = [
        {"k": k, "v": v_product(I, J, k), "ass": _primes(ass_product(I, J, k)), "certified": True}
        for k in range(1, cfg.k_max + 1)
    ]
    return Report("product-v", None, {"k_max": cfg.k_max}, True, rows)


def cmd_bound(inp, cfg, args) -> Report:
    ideals = list(inp.ideals)
    rows = []
    for k in range(1, cfg.k_max + 1):
        b = disjoint_sum_vbound(ideals, k)
        rows.append(
            {
                "k": k,
                "bound": b.bound,
                "equality_certified": b.equality_certified,
                "equality_regime": b.equality_regime,
                "certified": b.hypothesis_certified,
            }
        )
    b = disjoint_sum_vbound(ideals, 1)
    return Report("bound", None, {"parts": len(ideals), "details": list(b.details)}, b.hypothesis_certified, rows)


def cmd_oracle(inp, cfg, args) -> Report:
    I = _one(inp)
    wit = oracle_ass(I, cfg.oracle_budget)
    records = [
        {"prime": _prime_names(p), "witness": str(w.witness), "degree": w.degree} for p, w in wit.items()
    ]
    v = min(w.degree for w in wit.values())
    return Report("oracle", None, {"witnesses": records, "v": v}, True)


# ---------------------------------------------------------------------------
# verification suites


def _check(discrepancies: list[str], ok: bool, msg: str) -> None:
    if not ok:
        discrepancies.append(msg)


def _oracle_check(out: list[str], I: MonomialIdeal, budget: int, tag: str) -> bool:
    """Oracle cross-check of Ass and local v-numbers; False when over budget."""
    try:
        wit = oracle_ass(I, budget)
    except BudgetExceededError:
        return False
    direct = ass(I)
    _check(out, set(wit) == set(direct), f"{tag}: oracle Ass {sorted(map(str, wit))} != {direct.as_names()}")
    for p, w in wit.items():
        if p in direct:
            vd = v_local(I, p)
            _check(out, vd == w.degree, f"{tag}: v_{p} direct {vd} != oracle {w.degree}")
    return True


def verify_product(cfg: RunConfig, k_max: int | None = None) -> tuple[list[str], dict[str, int]]:
    rng = random.Random(cfg.seed)
    out: list[str] = []
    stats = {"cases": 0, "checks": 0, "oracle_checked": 0}
    for c in range(cfg.count):
        I, J = corpus.random_disjoint_pair(rng)
        tag = f"case {c} I={I} J={J}"
        stats["cases"] += 1
        for k in range(1, (k_max or cfg.k_max) + 1):
            P = power(product(I, J), k)
            direct = ass(P)
            _check(out, ass_product(I, J, k) == direct, f"{tag} k={k}: Ass formula differs")
            for q in direct:
                stats["checks"] += 1
                _check(out, v_product_local(I, J, q, k) == v_local(P, q), f"{tag} k={k}: v_{q} differs")
            _check(out, v_product(I, J, k) == v_number(P)[0], f"{tag} k={k}: global v differs")
        stats["oracle_checked"] += _oracle_check(out, product(I, J), cfg.oracle_budget, tag)
    return out, stats


def _split_prime(P: MonomialPrime, I: MonomialIdeal) -> tuple[MonomialPrime | None, MonomialPrime | None]:
    si = support(I)
    a = [i for i in P.variables if i in si]
    b = [i for i in P.variables if i not in si]
    return (MonomialPrime(P.ring, a) if a else None, MonomialPrime(P.ring, b) if b else None)


def verify_sum(cfg: RunConfig, k_max: int | None = None) -> tuple[list[str], dict[str, int]]:
    rng = random.Random(cfg.seed)
    out: list[str] = []
    stats = {"cases": 0, "checks": 0, "oracle_checked": 0}
    for c in range(cfg.count):
        I, J = corpus.random_disjoint_pair(rng)
        S = ideal_sum(I, J)
        tag = f"case {c} I={I} J={J}"
        stats["cases"] += 1
        for k in range(1, (k_max or cfg.k_max) + 1):
            P = power(S, k)
            direct = ass(P)
            _check(out, ass_sum_power(I, J, k) == direct, f"{tag} k={k}: Ass formula differs")
            for Q in direct:
                p, q = _split_prime(Q, I)
                stats["checks"] += 1
                if p is None or q is None:
                    out.append(f"{tag} k={k}: associated prime {Q} does not split")
                    continue
                _check(out, v_sum_local(I, J, p, q, k) == v_local(P, Q), f"{tag} k={k}: v_{Q} differs")
            vs = v_sum(I, J, k)
            _check(out, vs == v_number(P)[0], f"{tag} k={k}: global v differs")
            if k == 1:
                _check(out, vs == v_number(I)[0] + v_number(J)[0], f"{tag}: v(I+J) != v(I) + v(J)")
        stats["oracle_checked"] += _oracle_check(out, S, cfg.oracle_budget, tag)
    return out, stats


def verify_ci(cfg: RunConfig, k_max: int | None = None) -> tuple[list[str], dict[str, int]]:
    rng = random.Random(cfg.seed)
    out: list[str] = []
    stats = {"cases": 0, "checks": 0, "oracle_checked": 0}
    for c in range(cfg.count):
        I = corpus.random_complete_intersection(rng)
        tag = f"case {c} I={I}"
        stats["cases"] += 1
        for k in range(1, (k_max or cfg.k_max) + 1):
            stats["checks"] += 1
            _check(out, ci_ass(I) == ass_power(I, k), f"{tag} k={k}: Ass differs")
            _check(out, ci_v(I, k) == v_number(power(I, k))[0], f"{tag} k={k}: v differs")
        stats["oracle_checked"] += _oracle_check(out, I, cfg.oracle_budget, tag)
    return out, stats


def verify_vsplit(cfg: RunConfig, k_max: int | None = None) -> tuple[list[str], dict[str, int]]:
    rng = random.Random(cfg.seed)
    out: list[str] = []
    stats = {"cases": 0, "checks": 0, "splittable": 0, "oracle_checked": 0}
    family = corpus.splittable_family()
    cases = family + [corpus.random_ideal(rng, n_max=4, max_exp=2, max_gens=4) for _ in range(cfg.count)]
    for c, I in enumerate(cases):
        tag = f"case {c} I={I}"
        stats["cases"] += 1
        tree = vertex_split(I)
        if c < len(family):
            _check(out, tree is not None, f"{tag}: family member not recognised")
        if tree is None:
            continue
        stats["splittable"] += 1
        _check(out, validate_split_tree(tree), f"{tag}: witness tree does not re-validate")
        if not is_equigenerated(I):
            continue
        for k in range(1, (k_max or cfg.k_max) + 1):
            stats["checks"] += 1
            direct = v_number(power(I, k))[0]
            _check(out, vertex_splittable_v(I, k) == direct, f"{tag} k={k}: v differs ({direct})")
        stats["oracle_checked"] += _oracle_check(out, I, cfg.oracle_budget, tag)
    return out, stats


def verify_edge(cfg: RunConfig, k_max: int | None = None) -> tuple[list[str], dict[str, int]]:
    """Component count, the lower bound 2k + c - 2 on every power, and tail agreement.

    The closed form is only claimed for large k, so a window whose last value
    misses it is counted (``tail_mismatch``) but is not a discrepancy.
    """
    rng = random.Random(cfg.seed)
    out: list[str] = []
    stats = {"cases": 0, "checks": 0, "tail_mismatch": 0, "oracle_checked": 0}
    km = k_max or cfg.k_max
    for c in range(cfg.count):
        G = corpus.random_graph(rng)
        I = edge_ideal(G)
        cg = graph_component_count(G)
        tag = f"case {c} G={G.sorted_edges()}"
        stats["cases"] += 1
        _check(out, len(components(I)) == cg, f"{tag}: ideal components != graph components")
        slope, intercept = edge_v_asymptotic(G)
        last = None
        for k in range(1, km + 1):
            stats["checks"] += 1
            last = v_number(power(I, k))[0]
            _check(out, last >= slope * k + intercept, f"{tag} k={k}: v = {last} below 2k + c - 2")
        if last != slope * km + intercept:
            stats["tail_mismatch"] += 1
        stats["oracle_checked"] += _oracle_check(out, I, cfg.oracle_budget, tag)
    return out, stats


SUITES: dict[str, Callable[[RunConfig], tuple[list[str], dict[str, int]]]] = {
    "product": verify_product,
    "sum": verify_sum,
    "ci": verify_ci,
    "vsplit": verify_vsplit,
    "edge": verify_edge,
}


def cmd_verify(inp, cfg, args) -> Report:
    out, stats = SUITES[args.suite](cfg)
    result = dict(stats, seed=cfg.seed, k_max=cfg.k_max, discrepancy_count=len(out))
    return Report(f"verify {args.suite}", None, result, True, discrepancies=out)


# ---------------------------------------------------------------------------
# fixtures


def _table_and_fit(I: MonomialIdeal, table: VTable) -> tuple[list[dict[str, Any]], dict[str, Any] | None]:
    rows = [
        {
            "k": k,
            "v": v,
            "prime": _prime_names(p),
            "lower_bound_ok": v >= lower_bound(I, k),
            "certified": True,
        }
        for k, (v, p) in sorted(table.per_k.items())
    ]
    return rows, _fit_json(table.fit)


def repro_c5(cfg: RunConfig, args=None) -> Report:
    I = edge_ideal(Graph.cycle(5))
    km = max(cfg.k_max, 3)
    table = v_function(I, km, jobs=cfg.parallelism)
    rows, fit = _table_and_fit(I, table)
    out = []
    for k, (v, _) in table.per_k.items():
        want = 2 if k == 1 else 2 * k - 1
        _check(out, v == want, f"k={k}: v = {v}, expected {want}")
    f = table.fit
    _check(out, f is not None and (f.slope, f.intercept, f.vstab) == (2, -1, 2), f"fit {fit} is not 2k-1 from k=2")
    return Report("repro c5", render_input(I.ring, [I]), {"values": table.values}, False, rows, fit, out)


def _ex56_ideals():
    ring = AmbientRing([f"{c}{i}" for c in "xyz" for i in range(1, 6)])
    I1 = edge_ideal(Graph.cycle(5, "x"), ring)
    J = edge_ideal(Graph.cycle(5, "y"), ring)
    L = edge_ideal(Graph.cycle(5, "z"), ring)
    return I1, J, L


def repro_ex56(cfg: RunConfig, args=None) -> Report:
    """15-variable sum I1 + J*L of three 5-cycle edge ideals."""
    I1, J, L = _ex56_ideals()
    I2 = product(J, L)
    out = []
    rows = []
    for k in range(2, max(cfg.k_max, 4) + 1):
        v = v_sum(I1, I2, k, v_power_j=lambda m: v_product(J, L, m))
        rows.append({"k": k, "v": v, "expected": 2 * k + 3, "certified": True})
        _check(out, v == 2 * k + 3, f"k={k}: v_sum = {v}, expected {2 * k + 3}")
    result: dict[str, Any] = {"direct_k2": None}
    bound = disjoint_sum_vbound([I1, I2], 2)
    result["bound_k2"] = bound.bound
    if not getattr(args, "no_direct", False):
        direct = v_number(power(ideal_sum(I1, I2), 2))[0]
        result["direct_k2"] = direct
        _check(out, direct == rows[0]["v"], f"direct v at k=2 is {direct}, evaluator gave {rows[0]['v']}")
    return Report("repro ex56", render_input(I1.ring, [I1, I2]), result, True, rows, None, out)


def repro_ex59(cfg: RunConfig, args=None) -> Report:
    I = parse_ideal("ring x1 x2 x3\nx1^2, x1*x2, x1*x3^2, x3^3")
    out = []
    tree = vertex_split(I)
    top = None if tree is None or isinstance(tree, Leaf) else tree
    want_left = parse_ideal("x1, x2, x3^2", I.ring)
    want_right = parse_ideal("x3^3", I.ring)
    _check(
        out,
        top is not None
        and top.variable_name == "x1"
        and top.left.ideal == want_left
        and top.right.ideal == want_right,
        "vertex splitting at x1 into (x1, x2, x3^2) and (x3^3) not found",
    )
    km = max(cfg.k_max, 4)
    table = v_function(I, km, jobs=cfg.parallelism)
    rows, fit = _table_and_fit(I, table)
    f = table.fit
    _check(
        out,
        f is not None and (f.slope, f.intercept) == (2, 0) and f.vstab <= 2,
        f"fit {fit} is not 2k on k=2..{km}",
    )
    result = {"tree": None if tree is None else _tree_json(tree), "values": table.values}
    return Report("repro ex59", render_input(I.ring, [I]), result, False, rows, fit, out)


def repro_cor55(cfg: RunConfig, args=None) -> Report:
    graphs = {
        "C3+edge": Graph.from_edges([("a", "b"), ("b", "c"), ("a", "c"), ("d", "e")]),
        "C3+C3+edge": Graph.from_edges(
            [("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("g", "h")]
        ),
    }
    out = []
    rows = []
    summary = {}
    for name, G in graphs.items():
        c = graph_component_count(G)
        table = v_function(edge_ideal(G), cfg.k_max, jobs=cfg.parallelism)
        f = table.fit
        for k, (v, _) in sorted(table.per_k.items()):
            rows.append({"graph": name, "k": k, "v": v, "certified": True})
        summary[name] = {"c": c, "fit": _fit_json(f)}
        _check(
            out,
            f is not None and f.slope == 2 and f.intercept == c - 2 and f.vstab <= 4,
            f"{name}: fit {_fit_json(f)} is not 2k + {c - 2} with vstab <= 4",
        )
    return Report("repro cor55", None, summary, False, rows, None, out)


FIXTURES: dict[str, Callable[..., Report]] = {
    "c5": repro_c5,
    "ex56": repro_ex56,
    "ex58": repro_ex56,
    "ex59": repro_ex59,
    "cor55": repro_cor55,
}


def cmd_repro(inp, cfg, args) -> Report:
    return FIXTURES[args.fixture](cfg, args)


# ---------------------------------------------------------------------------
# entry point


COMMANDS: dict[str, tuple[Callable[..., Report], str]] = {
    "ass": (cmd_ass, "associated primes"),
    "ass-star": (cmd_ass_star, "union of Ass(I^k) over k <= kmax"),
    "ass-infty": (cmd_ass_infty, "stable associated primes read off a window"),
    "vnum": (cmd_vnum, "v-number"),
    "vnum-local": (cmd_vnum_local, "local v-number at --prime"),
    "vfunction": (cmd_vfunction, "v(I^k) for k <= kmax with a fitted line"),
    "components": (cmd_components, "connected components"),
    "edge-ideal": (cmd_edge_ideal, "edge ideal of a graph"),
    "ci": (cmd_ci, "closed forms for a monomial complete intersection"),
    "vsplit": (cmd_vsplit, "vertex splitting witness"),
    "sum-v": (cmd_sum_v, "v((I+J)^k) for disjoint supports"),
    "product-v": (cmd_product_v, "v((IJ)^k) for disjoint supports"),
    "bound": (cmd_bound, "lower bound for v of a power of a disjoint sum"),
    "oracle": (cmd_oracle, "brute-force witnesses"),
    "verify": (cmd_verify, "randomized cross-check suites"),
    "repro": (cmd_repro, "rerun reference fixtures"),
}

NEEDS_INPUT = {name for name in COMMANDS} - {"verify", "repro"}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kmax", type=int, default=6, help="largest power (default 6)")
    common.add_argument("--window", type=int, default=2, help="stabilization window (default 2)")
    common.add_argument("--prime", help="comma-separated variables of a monomial prime")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle-budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for per-k work")
    common.add_argument("--count", type=int, default=20, help="random cases per verify suite")
    common.add_argument("--timing", action="store_true", help="fill runtime_ms (breaks byte-identical output)")
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("input", nargs="?", help="input file, '-' or omitted for stdin")
    src.add_argument("--ideal", help="inline ideal text instead of a file")
    src.add_argument("--graph", action="store_true", help="read the input as an edge list")

    parser = _Parser(prog="monvnum", description="Associated primes and v-numbers of monomial ideals.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        parents = [common] + ([src] if name in NEEDS_INPUT else [])
        p = sub.add_parser(name, parents=parents, help=help_text)
        if name == "verify":
            p.add_argument("suite", choices=list(SUITES))
        elif name == "repro":
            p.add_argument("fixture", choices=list(FIXTURES))
            p.add_argument("--no-direct", action="store_true", help="skip slow direct cross-checks")
    return parser


def _read_input(args) -> ParsedInput:
    if args.ideal is not None:
        text = args.ideal
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    if args.graph:
        G = parse_graph(text)
        I = edge_ideal(G)
        return ParsedInput(I.ring, (I,), False, G)
    return parse_input(text)


def _echo(inp: ParsedInput) -> str:
    if inp.graph is not None:
        return render_graph(inp.graph)
    return render_input(inp.ring, inp.ideals)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            k_max=args.kmax,
            window=args.window,
            oracle_budget=args.oracle_budget,
            output_format=args.format,
            seed=args.seed,
            parallelism=args.jobs,
            count=args.count,
            timing=args.timing,
        )
    except ValueError as exc:
        print(f"monvnum: error: {exc}", file=stderr)
        return EXIT_USAGE
    handler = COMMANDS[args.command][0]
    inp = None
    try:
        if args.command in NEEDS_INPUT:
            inp = _read_input(args)
    except (ParseError, OSError) as exc:
        print(f"monvnum: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except (MonvnumError, ValueError, OverflowError) as exc:
        print(f"monvnum: input error: {exc}", file=stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        report = handler(inp, cfg, args)
    except (MonvnumError, ValueError, OverflowError) as exc:
        print(f"monvnum: {args.command}: {exc}", file=stderr)
        return EXIT_COMPUTATION
    if inp is not None:
        report.input_echo = _echo(inp)
        report.result = {"ring_inferred": inp.ring_inferred, **report.result}
    if cfg.timing:
        report.runtime_ms = round((time.perf_counter() - start) * 1000, 3)
    stdout.write(render_report(report, cfg.output_format))
    return EXIT_DISCREPANCY if report.discrepancies else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
