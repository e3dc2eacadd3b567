# ============================================================================
# handlers/output.py - Deterministic JSON, CSV and text documents
# ============================================================================

import csv
import io
import json
from typing import Iterable, Sequence


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False)


def render_csv(rows: Iterable[dict], fields: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fields), lineterminator='\n')
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue().rstrip('\n')


def render_matrix(rows: Sequence[Sequence]) -> str:
    """Right-aligned columns, one matrix row per line"""
    cells = [[str(x) for x in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return '\n'.join(' '.join(c.rjust(width) for c in row) for row in cells)


def join_values(values: Iterable[int], sep: str = ';') -> str:
    return sep.join(str(v) for v in values)
