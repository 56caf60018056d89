"""Command-line front end.

Exit codes: 0 success, 1 internal cross-check mismatch, 2 parse error,
3 validation error, 4 capacity exceeded, 5 closed-form condition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .cuts import cut_distance, cut_norm
from .envelope import (METHODS, QuotientError, QuotientMap, cycle_norm,
                       cycle_order, envelope_norm, graph_norm, quotient_norm,
                       resolve_method)
from .graph import (DEFAULT_TREE_LIMIT, CapacityError, GraphError,
                    all_pairs_shortest_paths, articulation_split, close_pairs,
                    root_tree, spanning_tree_count, validate_metric)
from .io import ParseError, read_cuts, read_graph, read_map, read_measure
from .measures import (MeasureError, check_probability, check_zero_mass,
                       zero_mass_from_pair)
from .oracle import kb_norm, primal_lp_distance, verify_coupling
from .tree import (BabaFailure, aligned_dual, barycenter, check_baba,
                   optimal_tree_coupling)

EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_CAPACITY = 4
EXIT_CONDITION = 5

COMMANDS = ("dist", "norm", "plan", "barycenter", "cutnorm", "cycle", "quotient", "check")


class ConditionFailure(RuntimeError):
    pass


class VerificationMismatch(RuntimeError):
    pass


@dataclass
class RunConfig:
    command: str
    graph: Optional[str] = None
    target: Optional[str] = None
    mu: Optional[str] = None
    nu: Optional[str] = None
    xi: Optional[str] = None
    cuts: Optional[str] = None
    map: Optional[str] = None
    method: str = "auto"
    root: Optional[str] = None
    sign0: int = 1
    limit: int = DEFAULT_TREE_LIMIT
    verify: bool = False
    json: bool = False


def decimal_text(v: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 12
        dec = Decimal(v.numerator) / Decimal(v.denominator)
    return f"{dec} (approx)"


@dataclass
class Report:
    command: str
    value: Optional[Fraction] = None
    method: Optional[str] = None
    lines: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def as_json(self) -> str:
        out = {"command": self.command}
        if self.value is not None:
            out["value"] = str(self.value)
            out["decimal"] = decimal_text(self.value)
        if self.method is not None:
            out["method"] = self.method
        out.update(self.data)
        return json.dumps(out, indent=2)

    def as_text(self) -> str:
        head = []
        if self.value is not None:
            head.append(f"{self.value}")
            head.append(f"  {decimal_text(self.value)}")
        if self.method is not None:
            head.append(f"  method: {self.method}")
        return "\n".join(head + self.lines)


def _need(cfg: RunConfig, *names: str) -> None:
    missing = [n for n in names if getattr(cfg, n) is None]
    if missing:
        raise ParseError("missing required option(s): "
                         + ", ".join("--" + n for n in missing), "<args>")


def _root_index(g, cfg: RunConfig) -> int:
    if cfg.root is None:
        return 0
    if cfg.root not in g.index:
        raise MeasureError(f"unknown root vertex {cfg.root!r}")
    return g.index[cfg.root]


def _label_map(labels, values) -> dict[str, str]:
    return {lab: str(v) for lab, v in zip(labels, values)}


def _norm_report(cfg: RunConfig, g, xi, command: str) -> Report:
    value, method = graph_norm(g, xi, cfg.method, cfg.limit, _root_index(g, cfg))
    rep = Report(command, value, method)
    if method == "tree":
        t = root_tree(g, _root_index(g, cfg))
        u = aligned_dual(t, xi, cfg.sign0)
        rep.data["dual"] = _label_map(g.labels, u.values)
        rep.lines.append("  dual potential: " + " ".join(
            f"{lab}={v}" for lab, v in zip(g.labels, u.values)))
    if cfg.verify:
        ref = kb_norm(all_pairs_shortest_paths(g), xi)
        rep.data["oracle"] = str(ref)
        rep.data["verified"] = ref == value
        rep.lines.append(f"  oracle: {ref} ({'agrees' if ref == value else 'MISMATCH'})")
        if ref != value:
            raise VerificationMismatch(rep.as_text())
    return rep


def cmd_dist(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "mu", "nu")
    g = read_graph(cfg.graph)
    mu = check_probability(read_measure(cfg.mu, g.labels))
    nu = check_probability(read_measure(cfg.nu, g.labels))
    return _norm_report(cfg, g, zero_mass_from_pair(mu, nu), "dist")


def cmd_norm(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "xi")
    g = read_graph(cfg.graph)
    xi = check_zero_mass(read_measure(cfg.xi, g.labels))
    return _norm_report(cfg, g, xi, "norm")


def cmd_plan(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "mu", "nu")
    g = read_graph(cfg.graph)
    mu = check_probability(read_measure(cfg.mu, g.labels))
    nu = check_probability(read_measure(cfg.nu, g.labels))
    d = all_pairs_shortest_paths(g)
    use_tree = g.is_tree() and cfg.method in ("auto", "tree")
    if cfg.method == "tree" and not g.is_tree():
        raise GraphError("--method tree needs a tree graph")
    rep = Report("plan")
    if use_tree:
        t = root_tree(g, _root_index(g, cfg))
        baba = check_baba(t, mu, nu)
        rep.data["baba"] = {"holds": baba.holds,
                            "violations": [g.labels[x] for x in baba.violations],
                            "sufficient": baba.sufficient,
                            "slack": _label_map(g.labels, baba.slack)}
        rep.lines.append("baba: " + ("holds" if baba.holds else "fails at "
                                     + " ".join(g.labels[x] for x in baba.violations)))
        rep.lines.append(f"baba sufficient condition (min mu >= 2|mu-nu|_1): {baba.sufficient}")
        out = optimal_tree_coupling(t, mu, nu)
        if isinstance(out, BabaFailure):
            rep.data["failure"] = {"mu_side": [g.labels[x] for x in out.mu_side],
                                   "nu_side": [g.labels[x] for x in out.nu_side]}
            raise ConditionFailure(
                "closed-form coupling unavailable: condition fails at "
                + " ".join(g.labels[x] for x in out.mu_side)
                + " (mu side) and "
                + " ".join(g.labels[x] for x in out.nu_side)
                + " (nu side); rerun with --method oracle")
        coupling, cost, method = out.coupling, out.cost, f"tree ({out.side} side)"
    else:
        cost, coupling = primal_lp_distance(d, mu, nu)
        method = "oracle"
    rep.value, rep.method = cost, method
    triples = [(g.labels[x], g.labels[y], m) for x, y, m in coupling.entries()]
    rep.data["coupling"] = [[a, b, str(m)] for a, b, m in triples]
    rep.data["cost"] = str(cost)
    rep.lines[:0] = [f"{a} {b} {m}" for a, b, m in triples] + [f"cost {cost}"]
    check = verify_coupling(coupling, d)
    if not check.feasible or check.cost != cost:
        raise VerificationMismatch("coupling failed verification")
    if cfg.verify:
        ref = primal_lp_distance(d, mu, nu)[0]
        rep.data["oracle"] = str(ref)
        rep.lines.append(f"oracle: {ref} ({'agrees' if ref == cost else 'MISMATCH'})")
        if ref != cost:
            raise VerificationMismatch(rep.as_text())
    return rep


def cmd_barycenter(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "mu")
    g = read_graph(cfg.graph)
    mu = check_probability(read_measure(cfg.mu, g.labels))
    v, val = barycenter(all_pairs_shortest_paths(g), mu)
    rep = Report("barycenter", val)
    rep.data["vertex"] = g.labels[v]
    rep.lines.insert(0, f"{g.labels[v]} (value {val})")
    return rep


def cmd_cutnorm(cfg: RunConfig) -> Report:
    _need(cfg, "cuts", "xi")
    labels = read_graph(cfg.graph).labels if cfg.graph else None
    fam, names = read_cuts(cfg.cuts, labels)
    xi = check_zero_mass(read_measure(cfg.xi, names))
    res = cut_norm(fam, xi)
    rep = Report("cutnorm", res.value, "cut")
    rep.data["contributions"] = [str(v) for v in res.contributions]
    if cfg.verify:
        cd = cut_distance(fam)
        ref = kb_norm(cd.d, xi)
        rep.data["oracle"] = str(ref)
        rep.data["dominated"] = res.value <= ref
        if ref == res.value:
            rel = "equal"
        else:
            rel = "cut norm smaller" if res.value < ref else "VIOLATION"
        rep.lines.append(f"  oracle norm of the cut metric: {ref} ({rel})")
        if cd.unseparated:
            rep.lines.append("  unseparated pairs: " + ", ".join(
                f"{names[x]}-{names[y]}" for x, y in cd.unseparated))
        if res.value > ref:
            raise VerificationMismatch(rep.as_text())
    return rep


def cmd_cycle(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "xi")
    g = read_graph(cfg.graph)
    xi = check_zero_mass(read_measure(cfg.xi, g.labels))
    order, weights = cycle_order(g)
    res = cycle_norm(weights, [xi[v] for v in order])
    rep = Report("cycle", res.value, "cycle")
    rep.data["order"] = [g.labels[v] for v in order]
    rep.data["t"] = str(res.t)
    rep.lines.append(f"  minimizing prefix: after {g.labels[order[res.argmin]]} (t = {res.t})")
    if cfg.verify:
        env = envelope_norm(g, xi, cfg.limit).value
        ref = kb_norm(all_pairs_shortest_paths(g), xi)
        ok = env == ref == res.value
        rep.data.update(envelope=str(env), oracle=str(ref), verified=ok)
        rep.lines.append(f"  envelope: {env}, oracle: {ref} ({'agree' if ok else 'MISMATCH'})")
        if not ok:
            raise VerificationMismatch(rep.as_text())
    return rep


def cmd_quotient(cfg: RunConfig) -> Report:
    _need(cfg, "graph", "target", "map", "xi")
    src = read_graph(cfg.graph)
    tgt = read_graph(cfg.target)
    qm = QuotientMap.from_labels(src, tgt, read_map(cfg.map))
    eta = check_zero_mass(read_measure(cfg.xi, tgt.labels))
    res = quotient_norm(qm, eta, cfg.limit)
    rep = Report("quotient", res.value, f"quotient ({res.rule} lift)")
    rep.data["lift"] = _label_map(src.labels, res.lift)
    rep.data["lift_norm"] = str(res.lift_value)
    rep.lines.append(f"  lift norm on source: {res.lift_value}")
    rep.lines.append("  lift: " + " ".join(
        f"{lab}={v}" for lab, v in zip(src.labels, res.lift) if v))
    if cfg.verify:
        ref = graph_norm(tgt, eta, cfg.method, cfg.limit)[0]
        rep.data["verified"] = ref == res.value
        if ref != res.value:
            raise VerificationMismatch(rep.as_text())
        rep.lines.append(f"  direct target norm: {ref} (agrees)")
    return rep


def cmd_check(cfg: RunConfig) -> Report:
    _need(cfg, "graph")
    g = read_graph(cfg.graph)
    d = all_pairs_shortest_paths(g)
    metric = validate_metric(d)
    close = close_pairs(g, d)
    far = [(i, j) for i, j, _ in g.edges if (i, j) not in set(close)]
    arts = articulation_split(g)
    rep = Report("check")
    rep.data["metric"] = metric.describe()
    rep.data["close_pairs"] = len(close)
    rep.data["non_close_edges"] = [[g.labels[i], g.labels[j]] for i, j in far]
    rep.data["articulation"] = [g.labels[a.vertex] for a in arts]
    rep.lines += [f"vertices {g.n}, edges {len(g.edges)}",
                  f"metric: {metric.describe()}",
                  f"close pairs: {len(close)} of {len(g.edges)} edges"]
    if far:
        rep.lines.append("non-close edges: " + ", ".join(
            f"{g.labels[i]}-{g.labels[j]}" for i, j in far))
    rep.lines.append("articulation vertices: "
                     + (" ".join(g.labels[a.vertex] for a in arts) or "none"))
    for a in arts:
        rep.lines.append(f"  {g.labels[a.vertex]}: " + " | ".join(
            "{" + ",".join(g.labels[v] for v in comp) + "}" for comp in a.components))
    try:
        count = spanning_tree_count(g, cfg.limit)
        rep.data["spanning_trees"] = count
        rep.lines.append(f"spanning trees: {count}")
    except CapacityError as exc:
        rep.lines.append(f"spanning trees: more than {cfg.limit} ({exc})")
    rep.data["method"] = resolve_method(g, cfg.limit)
    rep.lines.append(f"auto method: {rep.data['method']}")
    return rep


HANDLERS = {
    "dist": cmd_dist, "norm": cmd_norm, "plan": cmd_plan,
    "barycenter": cmd_barycenter, "cutnorm": cmd_cutnorm, "cycle": cmd_cycle,
    "quotient": cmd_quotient, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kantograph",
                                description="Exact Kantorovich distances on weighted graphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--graph", help="edge list 'LABEL LABEL WEIGHT'")
    p.add_argument("--target", help="target graph for the quotient command")
    p.add_argument("--mu", help="probability file 'LABEL MASS'")
    p.add_argument("--nu", help="probability file 'LABEL MASS'")
    p.add_argument("--xi", help="zero-mass vector file 'LABEL MASS'")
    p.add_argument("--cuts", help="cut family 'LAMBDA : LABEL ...'")
    p.add_argument("--map", help="quotient map 'SOURCE_LABEL TARGET_LABEL'")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--root", help="root label for tree methods")
    p.add_argument("--sign0", choices=("+1", "-1", "1"), default="+1",
                   help="sign used where a subtree mass vanishes")
    p.add_argument("--limit", type=int, default=DEFAULT_TREE_LIMIT,
                   help="maximum number of spanning trees to enumerate")
    p.add_argument("--verify", action="store_true", help="cross-check with the LP oracle")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(command=ns.command, graph=ns.graph, target=ns.target,
                     mu=ns.mu, nu=ns.nu, xi=ns.xi, cuts=ns.cuts, map=ns.map,
                     method=ns.method, root=ns.root, sign0=int(ns.sign0),
                     limit=ns.limit, verify=ns.verify, json=ns.json)


def run(cfg: RunConfig) -> Report:
    return HANDLERS[cfg.command](cfg)


def main(argv=None) -> int:
    cfg = config_from_args(argv)
    try:
        rep = run(cfg)
    except (ParseError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConditionFailure as exc:
        print(f"condition failure: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except VerificationMismatch as exc:
        print(f"verification mismatch:\n{exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (GraphError, MeasureError, QuotientError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(rep.as_json() if cfg.json else rep.as_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
