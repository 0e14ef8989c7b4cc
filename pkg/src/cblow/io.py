"""Readers and writers: poset JSON, fan JSON, face lists and DOT."""
import json
import re

from cblow.fans import FacePosetFan, fan_from_cones
from cblow.generators import RankedSemiLattice
from cblow.poset import Poset, SemiLattice, build_semilattice


class FormatError(ValueError):
    pass


def _dump(obj):
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON: {e}") from None


def poset_to_json(P, codim=None):
    """Labels sorted as text, covers as sorted index pairs, optional codim."""
    if isinstance(P, RankedSemiLattice):
        P, codim = P.lattice, P.codim
    names = [str(lab) for lab in P.labels]
    order = sorted(range(P.n), key=lambda i: names[i])
    pos = {old: new for new, old in enumerate(order)}
    covers = sorted((pos[i], pos[j]) for i, j in P.covers())
    obj = {"labels": [names[i] for i in order], "covers": [list(c) for c in covers]}
    if codim is not None:
        obj["codim"] = [int(codim[i]) for i in order]
    return _dump(obj)


def read_poset(text):
    """SemiLattice, or RankedSemiLattice when a codim array is present."""
    obj = _load(text)
    if not isinstance(obj, dict) or "labels" not in obj or "covers" not in obj:
        raise FormatError('poset JSON needs "labels" and "covers"')
    labels = obj["labels"]
    if not all(isinstance(s, str) for s in labels):
        raise FormatError("labels must be strings")
    pairs = []
    for c in obj["covers"]:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(i, int) for i in c)):
            raise FormatError(f"bad cover entry {c!r}")
        if not all(0 <= i < len(labels) for i in c):
            raise FormatError(f"cover index out of range in {c!r}")
        pairs.append((labels[c[0]], labels[c[1]]))
    L = build_semilattice(labels, pairs)
    if "codim" in obj:
        codim = obj["codim"]
        if len(codim) != len(labels):
            raise FormatError("codim must have one entry per label")
        return RankedSemiLattice(L, tuple(int(c) for c in codim))
    return L


def fan_to_json(fan):
    obj = {"dim": fan.dim}
    if fan.rays is not None:
        obj["rays"] = [list(r) for r in fan.rays]
    else:
        obj["n_rays"] = fan.n_rays
    obj["cones"] = [sorted(c) for c in fan.maximal_cones]
    if fan.non_simplicial_cones():
        top = set(fan.maximal_cones)
        obj["faces"] = [sorted(c) for c in fan.cones if len(c) >= 2 and c not in top]
    return _dump(obj)


def read_fan(text):
    obj = _load(text)
    if not isinstance(obj, dict) or "cones" not in obj:
        raise FormatError('fan JSON needs "cones"')
    return fan_from_cones(
        obj.get("rays"), obj["cones"], obj.get("faces", ()), dim=obj.get("dim"),
        n_rays=obj.get("n_rays"),
    )


EMPTY_FACE = "{}"


def faces_to_text(faces):
    """One face per line, vertex names sorted and space separated; ``{}`` is the empty face."""
    lines = []
    for f in faces:
        names = sorted(str(v) for v in f)
        if any(re.search(r"\s", s) or not s for s in names):
            raise FormatError("face-list vertex names may not be empty or contain whitespace")
        lines.append(" ".join(names) if names else EMPTY_FACE)
    return "".join(line + "\n" for line in sorted(lines))


def parse_faces(text):
    out = []
    for line in text.splitlines():
        out.append(() if line == EMPTY_FACE else tuple(line.split(" ")))
    return out


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(P):
    """Hasse diagram, bottom to top; nodes in label order, edges sorted."""
    names = [str(lab) for lab in P.labels]
    order = sorted(range(P.n), key=lambda i: names[i])
    pos = {old: new for new, old in enumerate(order)}
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for k, i in enumerate(order):
        lines.append(f"  n{k} [label={_quote(names[i])}];")
    for a, b in sorted((pos[i], pos[j]) for i, j in P.covers()):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*n(\d+) \[label="((?:[^"\\]|\\.)*)"\];$')
_EDGE = re.compile(r"^\s*n(\d+) -> n(\d+);$")


def parse_dot(text):
    """Poset back from export_dot output."""
    labels, edges = {}, []
    for line in text.splitlines():
        m = _NODE.match(line)
        if m:
            labels[int(m.group(1))] = re.sub(r"\\(.)", r"\1", m.group(2))
            continue
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
    names = [labels[k] for k in sorted(labels)]
    P = Poset.from_covers(names, [(names[a], names[b]) for a, b in edges])
    try:
        return SemiLattice(P.labels, P.leq, checked=True)
    except ValueError:
        return P


__all__ = [
    "FacePosetFan", "FormatError", "export_dot", "fan_to_json", "faces_to_text",
    "parse_dot", "parse_faces", "poset_to_json", "read_fan", "read_poset",
]
