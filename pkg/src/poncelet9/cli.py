"""Command-line interface.

Exit codes: 0 when the check or reproduction matches, 1 on a mismatch,
2 on a usage, parse or build error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass

from . import __version__, golden
from .errors import GeometryError

OK, MISMATCH, ERROR = 0, 1, 2
_PG_RE = re.compile(r"^pg\(?(\d+)\)?$")
_FAMILY_RE = re.compile(r"^(Ot|Os)\((.+)\)$")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    plane: str | None
    fmt: str
    seed: int
    out: str | None


@dataclass
class PlaneHandle:
    """A plane plus the label parsers that go with its coordinates."""

    id: str
    plane: object
    space: object = None  # PG instance for the Desarguesian planes

    def point(self, text):
        try:
            if self.space is not None:
                return self.space.parse_point(text)
            from .mq_planes import parse_point

            return parse_point(self.plane, text)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"cannot read point {text!r} in {self.id}") from exc

    def line(self, text):
        try:
            if self.space is not None:
                return self.space.parse_line(text)
            from .mq_planes import parse_line

            return parse_line(self.plane, text)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"cannot read line {text!r} in {self.id}") from exc


def resolve_plane(selector) -> PlaneHandle:
    from .desarguesian import pg
    from .mq_planes import PLANE_IDS, build_plane

    sel = selector.strip().lower()
    if sel in PLANE_IDS:
        return PlaneHandle(sel, build_plane(sel))
    m = _PG_RE.match(sel)
    if m:
        q = int(m.group(1))
        try:
            space = pg(q)
        except GeometryError as exc:
            raise UsageError(str(exc)) from exc
        return PlaneHandle(f"pg{q}" if q == 9 else f"pg({q})", space.plane, space)
    raise UsageError(f"unknown plane {selector!r} (pg9, omega, omega-dual, psi or pg(q))")


def _split_points(specs):
    out = []
    for s in specs:
        out += [p for p in (t.strip() for t in s.split(";")) if p]
    return out


def resolve_points(h: PlaneHandle, specs):
    """Point indices from named ovals, family members or explicit labels, in the order given."""
    from .desarguesian import os_conic, ot_conic
    from .mq_planes import OVAL_ALIASES, named_oval, parse_point

    if len(specs) == 1 and ":" in specs[0]:
        name = OVAL_ALIASES.get(specs[0], specs[0])
        if name.split(":")[0] != h.id:
            raise UsageError(f"oval {specs[0]!r} does not belong to {h.id}")
        try:
            named_oval(name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from exc
        if name in golden.load("ovals"):
            return [parse_point(h.plane, s) for s in golden.resolved_listing(name)]
        return list(named_oval(name).points)  # pragma: no cover
    if len(specs) == 1 and h.space is not None:
        m = _FAMILY_RE.match(specs[0].replace(" ", ""))
        if m:
            F = h.space.F
            try:
                param = F.parse(m.group(2))
                conic = ot_conic(F, param) if m.group(1) == "Ot" else os_conic(F, param)
            except (GeometryError, ValueError) as exc:
                raise UsageError(f"cannot build {specs[0]}: {exc}") from exc
            return conic.points(h.space)
    return [h.point(s) for s in _split_points(specs)]


def resolve_oval(h: PlaneHandle, spec):
    from .errors import NotAnOval, WrongCardinality
    from .oval_engine import Oval

    pts = resolve_points(h, [spec])
    try:
        return Oval(h.plane, pts, name=spec)
    except (NotAnOval, WrongCardinality) as exc:
        raise UsageError(f"{spec} is not an oval of {h.id}: {exc}") from exc


# ---------------------------------------------------------------- output


class Report:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.text_lines = []
        self.data = {"command": cfg.command, "seed": cfg.seed}
        if cfg.plane is not None:
            self.data["plane"] = cfg.plane
        self.csv_rows = None

    def line(self, s=""):
        self.text_lines.append(s)

    def render(self):
        if self.cfg.fmt == "json":
            return json.dumps(self.data, ensure_ascii=False, indent=1) + "\n"
        if self.cfg.fmt == "csv":
            if self.csv_rows is None:
                raise UsageError(f"{self.cfg.command} has no CSV output")
            buf = io.StringIO()
            csv.writer(buf, lineterminator="\n").writerows(self.csv_rows)
            return buf.getvalue()
        head = f"# {self.cfg.command}"
        if self.cfg.plane:
            head += f" {self.cfg.plane}"
        head += f" seed={self.cfg.seed}"
        return "\n".join([head] + self.text_lines) + "\n"


# ---------------------------------------------------------------- commands


def cmd_check(args, rep: Report):
    from .plane_core import check_axioms

    h = resolve_plane(args.plane)
    d = check_axioms(h.plane)
    rep.line(f"{h.plane.name}: {d.summary()}")
    rep.data.update(
        a1=d.a1, a2=d.a2, a3=d.a3, order=d.order, points=d.n_points, lines=d.n_lines, line_size=d.line_size
    )
    if d.quadrangle:
        quad = [h.plane.point_labels[p] for p in d.quadrangle]
        rep.data["quadrangle"] = quad
        rep.line("quadrangle: " + " ".join(quad))
    rep.csv_rows = [["a1", "a2", "a3", "order", "points", "lines"], [d.a1, d.a2, d.a3, d.order, d.n_points, d.n_lines]]
    return OK if d.ok else MISMATCH


def cmd_verify_oval(args, rep: Report):
    from .errors import WrongCardinality
    from .oval_engine import is_oval, is_oval_by_triples

    h = resolve_plane(args.plane)
    pts = resolve_points(h, args.points)
    lab = h.plane.point_labels
    try:
        by_lines, by_triples = is_oval(h.plane, pts), is_oval_by_triples(h.plane, pts)
    except WrongCardinality as exc:
        raise UsageError(str(exc)) from exc
    if bool(by_lines) != bool(by_triples):  # pragma: no cover
        raise GeometryError("line-based and triple-based oval tests disagree")
    rep.data["points"] = [lab[p] for p in pts]
    rep.data["oval"] = bool(by_lines)
    if by_lines:
        rep.line(f"oval: {len(pts)} points, no three collinear")
        rep.csv_rows = [["oval"], [True]]
        return OK
    a, b, c, g = by_lines.witness
    rep.data["witness"] = {"points": [lab[a], lab[b], lab[c]], "line": h.plane.line_labels[g]}
    rep.line(f"not an oval: {lab[a]}, {lab[b]}, {lab[c]} lie on {h.plane.line_labels[g]}")
    rep.csv_rows = [["oval", "p", "q", "r", "line"], [False, lab[a], lab[b], lab[c], h.plane.line_labels[g]]]
    return MISMATCH


def cmd_tangent_table(args, rep: Report):
    from .oval_engine import format_tangent_table, tangent_table

    h = resolve_plane(args.plane)
    oval = resolve_oval(h, args.oval)
    order = resolve_points(h, [args.oval])
    pts, rows = tangent_table(h.plane, oval, order)
    labels = h.plane.line_labels
    rep.data["points"] = [h.plane.point_labels[p] for p in pts]
    rep.data["rows"] = [[None if g is None else labels[g] for g in row] for row in rows]
    text = format_tangent_table(h.plane, pts, rows, "text")
    rep.text_lines += text.rstrip("\n").splitlines()
    csv_text = format_tangent_table(h.plane, pts, rows, "csv")
    rep.csv_rows = list(csv.reader(io.StringIO(csv_text)))
    return OK


def cmd_classify(args, rep: Report):
    from .poncelet import classify_pair

    h = resolve_plane(args.plane)
    Ot, Os = resolve_oval(h, args.ot), resolve_oval(h, args.os)
    v = classify_pair(h.plane, Ot, Os)
    rep.data.update(v.to_dict(h.plane))
    rep.data["Ot"], rep.data["Os"] = args.ot, args.os
    rep.line(v.describe())
    rep.line(f"exterior points of O_t on O_s: {v.exposed}")
    for w in rep.data["witnesses"]:
        rep.line(f"{len(w)}-gon: " + " ".join(w))
    rep.csv_rows = [["kind", "m_set", "exposed"], [v.kind, " ".join(map(str, sorted(v.m_set))), v.exposed]]
    return OK


def cmd_chase(args, rep: Report):
    from .poncelet import chase, format_chain, tangent_secant_edges

    h = resolve_plane(args.plane)
    Ot, Os = resolve_oval(h, args.ot), resolve_oval(h, args.os)
    start = h.point(args.start)
    if args.line is not None:
        first = h.line(args.line)
    else:
        through = [e.line for e in tangent_secant_edges(h.plane, Ot, Os) if start in (e.a, e.b)]
        if not through:
            raise UsageError(f"no tangent of O_t through {args.start} is a secant of O_s")
        first = through[0]
    try:
        trace = chase(h.plane, Ot, Os, start, first)
    except GeometryError as exc:
        raise UsageError(str(exc)) from exc
    lab = h.plane.point_labels
    touches = [e.touch for e in trace.edges]
    chain = format_chain(h.plane, trace.vertices, touches)
    if not trace.closed:
        chain = " ".join(chain.split(" ")[: 2 * len(trace.edges) + 1])
    rep.data.update(
        closed=trace.closed,
        m=trace.m,
        vertices=[lab[v] for v in trace.vertices],
        tangency=[lab[t] for t in touches],
        sides=[h.plane.line_labels[e.line] for e in trace.edges],
        chain=chain,
    )
    rep.line(chain)
    rep.line(f"closed after {trace.m} sides" if trace.closed else "does not close")
    rep.csv_rows = [["vertex", "side", "tangency"]] + [
        [lab[v], h.plane.line_labels[e.line], lab[e.touch]] for v, e in zip(trace.vertices, trace.edges)
    ]
    return OK if trace.closed else MISMATCH


def cmd_search_ovals(args, rep: Report):
    from .errors import NotAnArc
    from .oval_engine import extend_arc

    h = resolve_plane(args.plane)
    prefix = resolve_points(h, args.prefix) if args.prefix else []
    limit = args.limit if args.limit is not None else 10
    try:
        found = extend_arc(h.plane, prefix, max_results=limit)
    except NotAnArc as exc:
        raise UsageError(str(exc)) from exc
    lab = h.plane.point_labels
    rep.data["prefix"] = [lab[p] for p in sorted(set(prefix))]
    rep.data["limit"] = limit
    rep.data["ovals"] = [[lab[p] for p in o] for o in found]
    for o in found:
        rep.line(" ".join(lab[p] for p in o))
    rep.line(f"{len(found)} ovals" + (" (limit reached)" if len(found) == limit else ""))
    rep.csv_rows = [[lab[p] for p in o] for o in found]
    return OK


def cmd_reproduce(args, rep: Report):
    from .reproduce import TARGETS, run

    targets = list(TARGETS) if "all" in args.targets else list(dict.fromkeys(args.targets))
    results = []
    for t in targets:
        results += run(t, seed=args.seed)
    rep.data["results"] = [{"target": r.target, "ok": r.ok, "lines": r.lines} for r in results]
    for r in results:
        rep.line(f"{'PASS' if r.ok else 'FAIL'}  {r.target}")
        rep.text_lines += ["  " + s for s in r.lines]
    rep.csv_rows = [["target", "ok"]] + [[r.target, r.ok] for r in results]
    return OK if all(r.ok for r in results) else MISMATCH


def cmd_audit_nearfield(args, rep: Report):
    from .miniquaternion import nf_audit

    a = nf_audit()
    rep.text_lines += a.lines()
    rep.data["checks"] = a.checks
    rep.data["left_distributivity_failures"] = len(a.left_distributivity_counterexamples)
    rep.csv_rows = [["check", "ok"]] + [[k, v] for k, v in a.checks.items()]
    return OK if a.ok else MISMATCH


# ---------------------------------------------------------------- parser


def build_parser():
    from .reproduce import TARGETS

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=None, dest="fmt")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--limit", type=int, default=None)

    p = argparse.ArgumentParser(prog="poncelet9", description="Planes of order 9, ovals and Poncelet polygons.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    p.subcommands = {}

    def add(name, fn, help_, aliases=()):
        sp = sub.add_parser(name, parents=[common], help=help_, aliases=list(aliases))
        sp.set_defaults(fn=fn, command_name=name)
        p.subcommands[name] = sp
        return sp

    sp = add("check", cmd_check, "verify the projective-plane axioms")
    sp.add_argument("plane")
    sp = add("verify-oval", cmd_verify_oval, "test whether points form an oval")
    sp.add_argument("plane")
    sp.add_argument("points", nargs="+", help="point labels, a ';'-separated list or a named oval")
    sp = add("tangent-table", cmd_tangent_table, "secant and tangent lines of an oval")
    sp.add_argument("plane")
    sp.add_argument("oval")
    sp = add("classify-pair", cmd_classify, "Poncelet verdict for an oval pair", aliases=("classify",))
    sp.add_argument("plane")
    sp.add_argument("ot", metavar="Ot", help="oval whose tangents are used")
    sp.add_argument("os", metavar="Os", help="oval carrying the vertices")
    sp = add("chase", cmd_chase, "follow a Poncelet chain from a vertex")
    sp.add_argument("plane")
    sp.add_argument("ot", metavar="Ot")
    sp.add_argument("os", metavar="Os")
    sp.add_argument("start", help="starting vertex on Os")
    sp.add_argument("--line", help="first side (defaults to the first tangent-secant through start)")
    sp = add("search-ovals", cmd_search_ovals, "complete a partial arc to ovals")
    sp.add_argument("plane")
    sp.add_argument("prefix", nargs="*", help="points of the partial arc")
    sp = add("reproduce", cmd_reproduce, "regenerate reference tables and constructions")
    sp.add_argument("targets", nargs="+", choices=list(TARGETS) + ["all"], metavar="target")
    add("audit-nearfield", cmd_audit_nearfield, "check the near-field tables and axioms")
    return p


DEFAULT_FORMAT = {"classify-pair": "json"}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    name = args.command_name
    cfg = RunConfig(name, getattr(args, "plane", None), args.fmt or DEFAULT_FORMAT.get(name, "text"), args.seed, args.out)
    rep = Report(cfg)
    try:
        code = args.fn(args, rep)
        output = rep.render()
    except UsageError as exc:
        sys.stderr.write(parser.subcommands[name].format_usage())
        print(f"poncelet9 {name}: error: {exc}", file=sys.stderr)
        return ERROR
    except GeometryError as exc:
        print(f"poncelet9 {name}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return ERROR
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
