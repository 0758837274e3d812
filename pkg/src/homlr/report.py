"""Pass/fail reports carrying exact witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field

from homlr.linalg import fstr, is_zero_vec


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    defect: tuple | None = None
    warning: bool = False
    detail: str | None = None

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed}
        if self.warning:
            d["warning"] = True
        if self.witness is not None:
            d["witness"] = list(self.witness)
        if self.defect is not None:
            d["defect"] = [fstr(x) for x in self.defect]
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, check: Check) -> "Report":
        self.checks.append(check)
        return self

    def extend(self, other: "Report", prefix: str | None = None) -> "Report":
        for c in other.checks:
            name = "%s.%s" % (prefix, c.name) if prefix else c.name
            self.checks.append(Check(name, c.passed, c.witness, c.defect, c.warning, c.detail))
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.warning)

    @property
    def warnings(self) -> list:
        return [c for c in self.checks if c.warning and not c.passed]

    def __bool__(self):
        return self.passed

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed and not c.warning]

    def summary(self) -> str:
        hard = [c for c in self.checks if not c.warning]
        npass = sum(c.passed for c in hard)
        s = "%s: %d/%d checks pass" % (self.title, npass, len(hard))
        if self.warnings:
            s += ", %d warning(s)" % len(self.warnings)
        return s

    def to_dict(self) -> dict:
        hard = [c for c in self.checks if not c.warning]
        return {
            "title": self.title,
            "passed": self.passed,
            "summary": {"passed": sum(c.passed for c in hard), "total": len(hard)},
            "checks": [c.to_dict() for c in self.checks],
        }

    def __str__(self):
        lines = [self.summary()]
        for c in self.checks:
            tag = "ok" if c.passed else ("WARN" if c.warning else "FAIL")
            line = "  [%s] %s" % (tag, c.name)
            if not c.passed and c.witness is not None:
                line += " witness=%s" % (c.witness,)
            if not c.passed and c.defect is not None:
                line += " defect=[%s]" % ", ".join(fstr(x) for x in c.defect)
            lines.append(line)
        return "\n".join(lines)


def identity_check(name, cases, detail=None) -> Check:
    """Run ``cases``, an iterable of (witness, defect vector); pass iff every defect is zero.

    Stops at the first failing witness.
    """
    for witness, defect in cases:
        if not is_zero_vec(defect):
            if not isinstance(witness, tuple):
                witness = tuple(witness) if isinstance(witness, (list, range)) else (witness,)
            return Check(name, False, witness, tuple(defect), detail=detail)
    return Check(name, True, detail=detail)


def bool_check(name, ok, witness=None, detail=None, warning=False) -> Check:
    return Check(name, bool(ok), None if ok else witness, None, warning, detail)
