"""Figure generation for waveguide-NLS run artifacts.

Consumes only on-disk outputs of the solver package (run.csv,
verdict.csv, curve CSVs, CQNLS1 snapshots); no in-process coupling.
"""

from .render import KINDS, render
from .runs import find_snapshots, read_meta, read_table, read_verdict
from .snapshots import Snapshot, SnapshotError, read_snapshot, write_snapshot

__version__ = "0.1.0"
