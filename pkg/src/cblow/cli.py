"""Command-line front end: ``cblow <subcommand> ...``.

Exit status is 0 on success, 1 when input validation fails or a check
fails, and 2 on usage errors. Failures print one line on stderr that starts
with the error's class name.
"""
import argparse
import json
import sys

from cblow import algebra, blowup, building, fans, generators, io, nested
from cblow.generators import RankedSemiLattice
from cblow.poset import linear_extensions_decreasing


class UnknownLabel(ValueError):
    pass


class CheckFailed(Exception):
    """A check ran to completion and said no; its text is the verdict line."""


def split_labels(text):
    """Comma-separated labels; commas inside (), [] or {} do not split."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _lattice(path):
    obj = io.read_poset(_read(path))
    return obj.lattice if isinstance(obj, RankedSemiLattice) else obj


def _ids(L, labels):
    out = []
    for lab in labels:
        if lab not in L.index:
            raise UnknownLabel(f"no element labelled {lab!r}")
        out.append(L.index[lab])
    return out


def _set(L, text):
    return sorted(set(_ids(L, split_labels(text))))


def _names(L, ids):
    return ",".join(str(L.labels[i]) for i in sorted(ids, key=lambda i: str(L.labels[i])))


def _cone(text):
    try:
        return frozenset(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UnknownLabel(f"cone {text!r} must be comma-separated ray indices") from None


def _fan_set(fan, text):
    if text in fans.BUILDING_KINDS:
        return fans.fan_building_set(fan, text)
    return sorted(fan.cone_id(_cone(part)) for part in text.split(";") if part.strip())


# subcommands return the text to write


def cmd_gen(a):
    if a.boolean is not None:
        return io.poset_to_json(generators.boolean_lattice(a.boolean))
    if a.partition is not None:
        return io.poset_to_json(generators.partition_lattice(a.partition))
    if a.divisor is not None:
        return io.poset_to_json(generators.divisor_lattice(a.divisor))
    if a.coords is not None:
        sets = json.loads(_read(a.coords))
        return io.poset_to_json(generators.coordinate_arrangement_lattice(sets))
    g, f, seed = (int(s) for s in a.random.split(","))
    return io.poset_to_json(generators.random_semilattice(g, f, seed, remove_top=a.remove_top))


def cmd_check_building(a):
    L = _lattice(a.file)
    G = _set(L, a.set)
    names = list(building.CHECKERS) if a.criterion == "all" else [a.criterion]
    lines, ok = [], True
    for name in names:
        v = building.CHECKERS[name](L, G)
        ok = ok and bool(v)
        lines.append(v.describe(L.labels))
    text = "\n".join(lines) + "\n"
    if not ok:
        raise CheckFailed(text)
    return text


def cmd_min_building(a):
    L = _lattice(a.file)
    return _names(L, building.minimal_building_set(L)) + "\n"


def cmd_enum_building(a):
    L = _lattice(a.file)
    return "".join(_names(L, B) + "\n" for B in building.enumerate_building_sets(L, a.max_size))


def cmd_check_geometric(a):
    obj = io.read_poset(_read(a.file))
    if not isinstance(obj, RankedSemiLattice):
        raise io.FormatError("check-geometric needs a file with a codim array")
    v = building.check_geometric(obj, _set(obj.lattice, a.set))
    text = v.describe(obj.lattice.labels) + "\n"
    if not v:
        raise CheckFailed(text)
    return text


def cmd_nested(a):
    L = _lattice(a.file)
    C = nested.nested_complex(L, _set(L, a.set))
    if a.fvector:
        return " ".join(map(str, C.f_vector)) + "\n"
    faces = C.facets if a.facets else C.faces
    return io.faces_to_text([[L.labels[v] for v in f] for f in faces])


def cmd_blowup(a):
    L = _lattice(a.file)
    (alpha,) = _ids(L, [a.at])
    return io.poset_to_json(blowup.combinatorial_blowup(L, alpha))


def _ordering(L, G, text):
    if text is None:
        return None
    return _ids(L, split_labels(text))


def cmd_blowup_seq(a):
    L = _lattice(a.file)
    G = _set(L, a.set)
    return io.poset_to_json(blowup.blowup_sequence(L, G, _ordering(L, G, a.order)))


def cmd_verify_main(a):
    L = _lattice(a.file)
    G = _set(L, a.set)
    v = blowup.verify_main_theorem(
        L, G, _ordering(L, G, a.order), all_orders=a.all_orders, max_orders=a.max_orders
    )
    if not v:
        raise CheckFailed(v.describe(L.labels) + "\n")
    text = "OK (isomorphism found)\n"
    if a.all_orders:
        text += f"orderings checked: {v.witness['orderings']}\n"
    return text


def cmd_export_dot(a):
    return io.export_dot(_lattice(a.file))


def cmd_algebra(a):
    L = _lattice(a.file)
    p = algebra.d_algebra(L, _set(L, a.set), all_relations=a.all_relations)
    return algebra.export_presentation(p, a.format)


def cmd_fan_subdivide(a):
    fan = io.read_fan(_read(a.file))
    point = None if a.point is None else [int(s) for s in a.point.split(",")]
    return io.fan_to_json(fans.stellar_subdivision(fan, _cone(a.at), point))


def cmd_fan_simplicialize(a):
    fan = io.read_fan(_read(a.file))
    G = _fan_set(fan, a.set)
    order = None
    if a.order is not None:
        order = [fan.cone_id(_cone(p)) for p in a.order.split(";") if p.strip()]
    return io.fan_to_json(fans.simplicialize(fan, G, order))


def cmd_fan_verify(a):
    fan = io.read_fan(_read(a.file))
    v = fans.verify_stellar_is_blowup(fan, _cone(a.at))
    if not v:
        raise CheckFailed(v.describe() + "\n")
    return "OK (isomorphism found)\n"


def cmd_fan_face_poset(a):
    return io.poset_to_json(io.read_fan(_read(a.file)).face_poset)


def build_parser():
    p = argparse.ArgumentParser(prog="cblow", description="Building sets, nested sets and combinatorial blowups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file", help="input file, or - for stdin")
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    g = add("gen", cmd_gen, "generate a semilattice as poset JSON", file=False)
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--boolean", type=int, metavar="N")
    src.add_argument("--partition", type=int, metavar="N")
    src.add_argument("--divisor", type=int, metavar="N")
    src.add_argument("--coords", metavar="FILE", help="JSON list of coordinate sets")
    src.add_argument("--random", metavar="G,F,SEED", help="ground size, family size, seed")
    g.add_argument("--remove-top", action="store_true", help="with --random: drop the top")

    s = add("check-building", cmd_check_building, "check a building set")
    s.add_argument("--set", required=True)
    s.add_argument("--criterion", default="c4", choices=["def", "c2", "c3", "c4", "all"])
    add("min-building", cmd_min_building, "print the minimal building set")
    s = add("enum-building", cmd_enum_building, "list all building sets")
    s.add_argument("--max-size", type=int, default=16)
    s = add("check-geometric", cmd_check_geometric, "check the codimension condition")
    s.add_argument("--set", required=True)

    s = add("nested", cmd_nested, "nested set complex")
    s.add_argument("--set", required=True)
    kind = s.add_mutually_exclusive_group()
    kind.add_argument("--faces", action="store_true", help="all faces (default)")
    kind.add_argument("--facets", action="store_true")
    kind.add_argument("--fvector", action="store_true")

    s = add("blowup", cmd_blowup, "combinatorial blowup at one element")
    s.add_argument("--at", required=True, metavar="LABEL")
    s = add("blowup-seq", cmd_blowup_seq, "blow up a building set in order")
    s.add_argument("--set", required=True)
    o = s.add_mutually_exclusive_group()
    o.add_argument("--order", metavar="LABELS")
    o.add_argument("--any-order", action="store_true", help="use the first decreasing order")
    s = add("verify-main", cmd_verify_main, "compare the blowup sequence with the nested complex")
    s.add_argument("--set", required=True)
    o = s.add_mutually_exclusive_group()
    o.add_argument("--order", metavar="LABELS")
    o.add_argument("--all-orders", action="store_true")
    s.add_argument("--max-orders", type=int, default=None)

    add("export-dot", cmd_export_dot, "Hasse diagram in DOT")
    s = add("algebra", cmd_algebra, "presentation of D(L,G)")
    s.add_argument("--set", required=True)
    s.add_argument("--format", default="generic", choices=list(algebra.FORMATS))
    s.add_argument("--all-relations", action="store_true")

    f = sub.add_parser("fan", help="polyhedral fan operations")
    fsub = f.add_subparsers(dest="fan_command", required=True)

    def fadd(name, func, help_):
        sp = fsub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)
        return sp

    s = fadd("subdivide", cmd_fan_subdivide, "stellar subdivision at a cone")
    s.add_argument("--at", required=True, metavar="CONE", help="comma-separated ray indices")
    s.add_argument("--point", metavar="X,Y,...")
    s = fadd("simplicialize", cmd_fan_simplicialize, "subdivide at every cone of a building set")
    s.add_argument("--set", required=True, help="cones separated by ';', or all | rays+nonsimplicial | irreducible")
    s.add_argument("--order", help="cones separated by ';'")
    s = fadd("verify", cmd_fan_verify, "check stellar subdivision against the blowup")
    s.add_argument("--at", required=True, metavar="CONE")
    fadd("face-poset", cmd_fan_face_poset, "face poset as poset JSON")
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text = args.func(args)
    except CheckFailed as e:
        stdout.write(str(e))
        first = str(e).splitlines()[0] if str(e) else ""
        stderr.write(f"CheckFailed: {first}\n")
        return 1
    except (ValueError, RuntimeError, OSError, KeyError) as e:
        msg = " ".join(str(e).split())
        stderr.write(f"{type(e).__name__}: {msg}\n")
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())
