"""Check results and verification reports.

Reports render deterministically: checks sort by (name, location) and the
same inputs always produce byte-identical text and JSON.
"""

from __future__ import annotations


class Check:
    __slots__ = ("name", "status", "residual", "location")

    def __init__(self, name: str, ok: bool, residual: str = "0", location: str = ""):
        self.name = name
        self.status = "pass" if ok else "fail"
        self.residual = residual
        self.location = location

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "residual": self.residual,
            "location": self.location,
        }

    @staticmethod
    def not_applicable(name: str, location: str = "") -> "Check":
        c = Check(name, True, "", location)
        c.status = "not-applicable"
        return c

    @staticmethod
    def from_dict(d: dict) -> "Check":
        c = Check(d["name"], True, d.get("residual", "0"), d.get("location", ""))
        c.status = d.get("status", "pass")
        return c

    def __repr__(self):
        return f"Check({self.name!r}, {self.status})"


class VerificationReport:
    def __init__(self, checks=()):
        self.checks = list(checks)

    def add(self, name: str, ok: bool, residual: str = "0", location: str = ""):
        self.checks.append(Check(name, ok, residual, location))

    def add_not_applicable(self, name: str, location: str = ""):
        self.checks.append(Check.not_applicable(name, location))

    def extend(self, other: "VerificationReport"):
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def sorted(self) -> "VerificationReport":
        return VerificationReport(sorted(self.checks, key=lambda c: (c.name, c.location)))

    def to_dict(self) -> dict:
        rep = self.sorted()
        failed = len(rep.failures)
        return {
            "checks": [c.to_dict() for c in rep.checks],
            "summary": {
                "total": len(rep.checks),
                "failed": failed,
                "status": "pass" if failed == 0 else "fail",
            },
        }

    @staticmethod
    def from_dict(d: dict) -> "VerificationReport":
        return VerificationReport(Check.from_dict(c) for c in d.get("checks", ()))

    def render_text(self) -> str:
        rep = self.sorted()
        lines = []
        for c in rep.checks:
            if c.status == "not-applicable":
                lines.append(f"[N/A]  {c.name}")
            elif c.ok:
                lines.append(f"[PASS] {c.name}")
            else:
                where = f" at {c.location}" if c.location else ""
                lines.append(f"[FAIL] {c.name}{where} residual={c.residual}")
        failed = len(rep.failures)
        lines.append(f"checks: {len(rep.checks)} failed: {failed} "
                     f"status: {'pass' if failed == 0 else 'fail'}")
        return "\n".join(lines) + "\n"
