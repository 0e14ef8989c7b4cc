from dataclasses import dataclass, field


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; truthy iff it passed.

    ``witness`` names the elements (by id) that made a check fail, or carries
    the positive certificate (an isomorphism, a chain, ...) when it passed.
    """

    ok: bool
    criterion: str
    witness: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return self.ok

    def describe(self, labels=None):
        """One-line text; ids in the witness are rendered through ``labels``."""
        status = "OK" if self.ok else "FAIL"
        parts = [f"{status} criterion={self.criterion}"]
        if self.reason:
            parts.append(self.reason)
        for key, value in self.witness.items():
            parts.append(f"{key}={_render(value, labels)}")
        return " ".join(parts)


def _render(value, labels):
    if labels is None:
        return str(value)
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(labels[value])
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return "{" + ",".join(_render(v, labels) for v in items) + "}"
    return str(value)
