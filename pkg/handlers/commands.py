from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import config
from algebra.field import FieldCtx, field_for_order
from algebra.linalg import FqMatrix
from algebra.literals import parse_poly
from algebra.modulus import ModulusSpec, euler_phi, parse_modulus, reduce_unit
from handlers.output import join_values, render_csv, render_json, render_matrix
from messages import CliMessages
from services.differentials import (
    basis_records,
    count_via_series,
    different_degree,
    enumerate_basis,
    enumerate_generators,
    genus,
)
from services.galois_repr import rep_matrix, rep_record, representation_table
from services.gaps import gaps_row
from services.lambda_algebra import WindowPolicy
from services.verification import FAIL, run_suites
from utils.errors import InternalInvariant, InvalidInput
from utils.logger import setup_logger

logger = setup_logger(__name__)

SUPPORTED_FORMATS: Dict[str, Tuple[str, ...]] = {
    'genus': ('text', 'json', 'csv'),
    'count': ('text', 'json'),
    'basis': ('json', 'csv', 'text'),
    'generators': ('json', 'csv', 'text'),
    'rep': ('json', 'text'),
    'gaps': ('csv', 'json', 'text'),
    'verify': ('json', 'text'),
}

GAPS_FIELDS = ('modulus', 'anchor', 'genus', 'orders', 'gaps', 'caveat')


@dataclass
class RunConfig:
    """Everything one CLI invocation needs"""
    q: int
    modulus_literal: Optional[str] = None
    anchor: int = 0
    format: Optional[str] = None
    max_genus: int = config.MAX_GENUS
    max_units: int = config.MAX_UNITS
    unit: Optional[str] = None
    max_deg: int = config.DEFAULT_VERIFY_MAX_DEG

    def __post_init__(self):
        if config.ENV_ERRORS:
            raise InvalidInput(CliMessages.BAD_ENVIRONMENT.format(errors="; ".join(config.ENV_ERRORS)))
        if self.q > config.MAX_Q:
            raise InvalidInput(CliMessages.Q_TOO_LARGE.format(q=self.q, limit=config.MAX_Q))

    @cached_property
    def field(self) -> FieldCtx:
        return field_for_order(self.q)

    @cached_property
    def spec(self) -> ModulusSpec:
        return parse_modulus(self.modulus_literal, self.field)


class CommandHandlers:
    """All command handlers"""

    def __init__(self, run: RunConfig):
        self.run = run
        self.exit_code = 0

    def handle(self, command: str) -> str:
        fmt = self.run.format or config.DEFAULT_FORMATS[command]
        if fmt not in SUPPORTED_FORMATS[command]:
            raise InvalidInput(CliMessages.UNSUPPORTED_FORMAT.format(fmt=fmt, command=command))
        if command != 'verify' and not self.run.modulus_literal:
            raise InvalidInput(CliMessages.MISSING_MODULUS.format(command=command))
        logger.info(f"Running {command} for q={self.run.q}, modulus={self.run.modulus_literal}")
        return getattr(self, f"{command}_command")(fmt)

    def _header(self) -> dict:
        return {"q": self.run.q, "modulus": self.run.spec.label()}

    def _anchored_header(self) -> dict:
        WindowPolicy.default(self.run.spec, self.run.anchor)
        return {**self._header(), "anchor": self.run.anchor}

    def _entries(self, matrix: FqMatrix) -> List[list]:
        field = self.run.field
        if field.r == 1:
            return matrix.to_lists()
        return [[field.format(x) for x in row] for row in matrix.to_lists()]

    def genus_command(self, fmt: str) -> str:
        """Handle genus command"""
        spec = self.run.spec
        payload = {**self._header(), "genus": genus(spec),
                   "degree": euler_phi(spec), "different_degree": different_degree(spec)}
        if fmt == 'text':
            return str(payload["genus"])
        if fmt == 'csv':
            return render_csv([payload], list(payload))
        return render_json(payload)

    def count_command(self, fmt: str) -> str:
        """Handle count command"""
        payload = {**self._anchored_header(), "count": count_via_series(self.run.spec, self.run.anchor)}
        return str(payload["count"]) if fmt == 'text' else render_json(payload)

    def basis_command(self, fmt: str) -> str:
        """Handle basis command"""
        spec, anchor = self.run.spec, self.run.anchor
        header = self._anchored_header()
        basis = enumerate_basis(spec, anchor, self.run.max_genus)
        records = basis_records(basis, spec, anchor)

        if fmt == 'json':
            return render_json({**header, "genus": len(basis), "basis": records})
        if fmt == 'csv':
            rows = [{"mu0": r["mu0"],
                     "mu": join_values(v for _, _, v in r["mu"]),
                     "val_finite": join_values(r["val_finite"]),
                     "inf_bound": r["inf_bound"]} for r in records]
            return render_csv(rows, ('mu0', 'mu', 'val_finite', 'inf_bound'))
        lines = [CliMessages.BASIS_HEADER.format(modulus=header["modulus"], q=self.run.q,
                                                 anchor=anchor, count=len(basis))]
        for t, r in zip(basis, records):
            lines.append(CliMessages.BASIS_LINE.format(tuple=t, val_finite=r["val_finite"],
                                                       inf_bound=r["inf_bound"]))
        return '\n'.join(lines)

    def generators_command(self, fmt: str) -> str:
        """Handle generators command"""
        spec = self.run.spec
        generators = enumerate_generators(spec, self.run.max_genus)
        if fmt == 'json':
            return render_json({**self._header(), "generators": [{"mu": t.mu_json()} for t in generators]})
        if fmt == 'csv':
            rows = [{"mu": join_values(v for _, _, v in t.mu_json())} for t in generators]
            return render_csv(rows, ('mu',))
        lines = [CliMessages.GENERATORS_HEADER.format(modulus=spec.label(), q=self.run.q,
                                                      count=len(generators))]
        lines.extend(str(t) for t in generators)
        return '\n'.join(lines)

    def rep_command(self, fmt: str) -> str:
        """Handle rep command - one unit with --unit, the whole table otherwise"""
        spec, anchor = self.run.spec, self.run.anchor
        self._anchored_header()

        if self.run.unit is not None:
            A = reduce_unit(parse_poly(self.run.unit, self.run.field), spec)
            basis = enumerate_basis(spec, anchor, self.run.max_genus)
            matrix = rep_matrix(A, spec, anchor, basis)
            if fmt == 'text':
                return CliMessages.REP_HEADER.format(unit=A, anchor=anchor) + '\n' + \
                    render_matrix(self._entries(matrix))
            record = rep_record(A, matrix, basis)
            record["matrix"] = self._entries(matrix)
            return render_json(record)

        table = representation_table(spec, anchor, self.run.max_units, self.run.max_genus)
        if fmt == 'text':
            blocks = [CliMessages.REP_HEADER.format(unit=A, anchor=anchor) + '\n' +
                      render_matrix(self._entries(table[A])) for A in table.units]
            return '\n\n'.join(blocks)
        return render_json({
            **self._anchored_header(),
            "basis_ref": [[t.mu0, t.mu_json()] for t in table.basis],
            "representations": [{"unit": str(A), "matrix": self._entries(table[A])} for A in table.units],
        })

    def gaps_command(self, fmt: str) -> str:
        """Handle gaps command"""
        self._anchored_header()
        row = gaps_row(self.run.spec, self.run.anchor, self.run.max_genus)
        if fmt == 'csv':
            return render_csv([row], GAPS_FIELDS)
        if fmt == 'json':
            return render_json({**row, "convention": config.GAP_CONVENTION})
        text = CliMessages.GAPS_TEXT.format(modulus=row["modulus"], anchor=row["anchor"], genus=row["genus"],
                                            orders=row["orders"] or '-', gaps=row["gaps"] or '-',
                                            convention=config.GAP_CONVENTION)
        return text + ('\n' + CliMessages.GAPS_CAVEAT if row["caveat"] == 'true' else '')

    def verify_command(self, fmt: str) -> str:
        """Handle verify command"""
        report = run_suites(self.run.q, self.run.max_deg, self.run.max_genus, self.run.max_units)
        if not report.passed:
            self.exit_code = InternalInvariant.exit_code
        if fmt == 'json':
            return render_json(report.to_dict())
        counts = report.counts()
        lines = [CliMessages.VERIFY_SUMMARY.format(icon='✅' if report.passed else '❌', q=report.q,
                                                   max_deg=report.max_deg, passed=counts['pass'],
                                                   failed=counts['fail'], skipped=counts['skip'])]
        lines.extend(CliMessages.VERIFY_FAILURE.format(suite=r.suite, modulus=r.modulus, detail=r.detail)
                     for r in report.results if r.status == FAIL)
        return '\n'.join(lines)
