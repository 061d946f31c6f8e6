"""Reference eigenvalue tables and digit-level comparison against them."""
import csv
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources
from pathlib import Path

from .potentials import parse_potential
from .spectrum import converge_state, parse_state, truncate_decimal

TABLE_IDS = ("T1", "T2", "T3", "T4", "T5")
COLUMNS = ("table", "state", "potential", "param", "energy")
# |E| above this uses the coarse tolerance, below it the near-threshold one
NEAR_THRESHOLD_ENERGY = 1e-3
TOL_REGULAR = 1e-10
TOL_NEAR_THRESHOLD = 1e-11


class GoldenFileError(ValueError):
    pass


@dataclass(frozen=True)
class GoldenEntry:
    table_id: str
    n: int
    l: int
    potential: str
    param: str
    energy_string: str  # magnitude as printed, e.g. "0.44020051029"

    @property
    def state(self):
        return f"{self.n}{'spdfghiklm'[self.l]}"

    @property
    def energy(self):
        return -float(self.energy_string)

    @property
    def decimals(self):
        return len(self.energy_string.partition(".")[2])

    @property
    def spec(self):
        return parse_potential(self.potential)

    @property
    def tolerance(self):
        return TOL_NEAR_THRESHOLD if abs(self.energy) < NEAR_THRESHOLD_ENERGY else TOL_REGULAR


def default_golden_path():
    return resources.files("gpsscreen") / "data" / "golden.csv"


def load_golden(path=None):
    path = Path(path) if path is not None else default_golden_path()
    try:
        text = path.read_text(encoding="utf-8")
    except (FileNotFoundError, IsADirectoryError) as exc:
        raise GoldenFileError(f"golden file not found: {path}") from exc
    rows = list(csv.DictReader(text.splitlines()))
    if not rows:
        raise GoldenFileError(f"golden file is empty: {path}")
    entries = []
    for row in rows:
        if tuple(row) != COLUMNS:
            raise GoldenFileError(f"unexpected golden columns {tuple(row)}")
        n, l = parse_state(row["state"])
        if row["table"] not in TABLE_IDS:
            raise GoldenFileError(f"unknown table id {row['table']!r}")
        value = Decimal(row["energy"])
        if not value.is_finite() or value <= 0:
            raise GoldenFileError(f"energy magnitude must be positive: {row['energy']!r}")
        entries.append(GoldenEntry(row["table"], n, l, row["potential"], row["param"], row["energy"]))
    return entries


def matched_digits(golden_string, computed_energy):
    """Leading significant digits shared by the golden magnitude and the
    computed magnitude truncated to the same number of decimals."""
    decimals = len(golden_string.partition(".")[2])
    computed = truncate_decimal(abs(computed_energy), decimals)
    g = golden_string.replace(".", "").lstrip("0")
    c = computed.replace(".", "")
    # align on the golden decimal point
    c = c[len(c) - len(golden_string.replace(".", "")):].lstrip("0") if len(c) >= len(golden_string.replace(".", "")) else c
    if len(c) != len(g):
        return 0
    count = 0
    for a, b in zip(g, c):
        if a != b:
            break
        count += 1
    return count


@dataclass(frozen=True)
class Comparison:
    entry: GoldenEntry
    computed: float
    stable_digits: int
    r_max: float

    @property
    def abs_diff(self):
        return abs(self.computed - self.entry.energy)

    @property
    def matched_digits(self):
        return matched_digits(self.entry.energy_string, self.computed)

    @property
    def ok(self):
        return self.abs_diff <= self.entry.tolerance


def compare_entry(entry, base=None):
    state = converge_state(entry.spec, entry.n, entry.l, base)
    return Comparison(entry, state.energy, state.stable_digits, state.config_used.r_max)
