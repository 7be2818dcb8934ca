"""Report objects shared by the CLI: exact values, trajectory tables, verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Entropy, Factored
from .entropy import TrajectoryReport

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3
EXIT_BUDGET = 4


@dataclass
class Report:
    command: str
    scenario: str = ""
    values: dict = field(default_factory=dict)  # name -> Entropy
    trajectory: object = None  # TrajectoryReport
    certificates: list = field(default_factory=list)
    checks: list = field(default_factory=list)  # CheckReport or plain dicts
    notes: list = field(default_factory=list)
    agreement: bool | None = None
    exit_code: int = EXIT_OK
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "scenario": self.scenario,
            "values": {k: v.to_json() for k, v in self.values.items()},
            "certificates": list(self.certificates),
            "checks": [c if isinstance(c, dict) else c.to_json() for c in self.checks],
            "notes": list(self.notes),
            "agreement": self.agreement,
            "exit_code": self.exit_code,
            "error": self.error,
        }
        if self.trajectory is not None:
            tr = self.trajectory
            out["trajectory"] = {
                "t": [t.to_json() for t in tr.t],
                "beta": [b.to_json() for b in tr.beta],
                "certified": tr.certified,
                "certificate": tr.certificate,
            }
        return out

    @classmethod
    def from_json(cls, data) -> Report:
        """Rebuild a report; exact values come back as Entropy objects."""
        rep = cls(
            command=data["command"],
            scenario=data.get("scenario", ""),
            values={k: Entropy.from_json(v) for k, v in data.get("values", {}).items()},
            certificates=list(data.get("certificates", [])),
            checks=list(data.get("checks", [])),
            notes=list(data.get("notes", [])),
            agreement=data.get("agreement"),
            exit_code=data.get("exit_code", EXIT_OK),
            error=data.get("error"),
        )
        if "trajectory" in data:
            tr = data["trajectory"]
            t = tuple(Factored.from_json(x) for x in tr["t"])
            rep.trajectory = TrajectoryReport(len(t), t, tuple(Factored.from_json(b) for b in tr["beta"]),
                                              tr["certified"], tr["certificate"])
        return rep

    def render_text(self) -> str:
        lines = [f"== {self.command}" + (f": {self.scenario}" if self.scenario else "")]
        if self.error:
            lines.append(f"error: {self.error}")
        for name, value in self.values.items():
            lines.append(f"{name} = {value.render()}")
        if self.agreement is not None:
            lines.append("limit and limit-free routes " + ("agree" if self.agreement else "DISAGREE"))
        if self.trajectory is not None:
            tr = self.trajectory
            lines.append(f"{'n':>4}  {'t_n':>16}  {'beta_n':>10}")
            for i, t in enumerate(tr.t):
                beta = str(tr.beta[i].value) if i < len(tr.beta) else ""
                lines.append(f"{i + 1:>4}  {str(t.value):>16}  {beta:>10}")
            lines.append(f"certificate: {tr.certificate}"
                         + ("" if tr.certified else " (not certified)"))
        for cert in self.certificates:
            lines.append(f"certificate: {cert}")
        for c in self.checks:
            if isinstance(c, dict):
                lines.append(f"[{c.get('verdict', '?')}] {c.get('check', '')}: {c.get('message', '')}")
                continue
            lines.append(f"[{c.verdict}] {c.name}: {c.lhs} {c.relation} {c.rhs}")
            for k, v in c.details.items():
                lines.append(f"    {k}: {v}")
            for k, v in c.hypotheses.items():
                lines.append(f"    hypothesis {k}: {v}")
        for note in self.notes:
            lines.append(f"note: {note}")
        lines.append(f"exit code {self.exit_code}")
        return "\n".join(lines)
