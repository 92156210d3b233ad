"""
Bench records and their on-disk forms.

CSV columns, in order:
    algo,dim,seed,preprocess,hermite_root,elapsed_s,loop_iterations,insertions
preprocess is written as true/false, floats with repr() so they read back
bit-identical. Only successful records go to the CSV; the JSON stream
(one object per line) carries every record with its status.
"""

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

from common.io_json import write_json_lines
from common.types import ReductionStats

CSV_COLUMNS = (
    "algo",
    "dim",
    "seed",
    "preprocess",
    "hermite_root",
    "elapsed_s",
    "loop_iterations",
    "insertions",
)

STATUS_OK = "ok"
STATUS_REJECTED = "rejected"
STATUS_ERROR = "error"


@dataclass
class BenchRecord:
    algo: str
    dim: int
    seed: int
    preprocess: bool
    hermite_root: float = math.nan
    elapsed_s: float = 0.0
    stats: ReductionStats = field(default_factory=ReductionStats)
    status: str = STATUS_OK
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK

    def csv_row(self) -> list:
        return [
            self.algo,
            str(self.dim),
            str(self.seed),
            "true" if self.preprocess else "false",
            repr(float(self.hermite_root)),
            repr(float(self.elapsed_s)),
            str(self.stats.loop_iterations),
            str(self.stats.insertions),
        ]

    @classmethod
    def from_csv_row(cls, row: dict) -> "BenchRecord":
        return cls(
            algo=row["algo"],
            dim=int(row["dim"]),
            seed=int(row["seed"]),
            preprocess=row["preprocess"].strip().lower() == "true",
            hermite_root=float(row["hermite_root"]),
            elapsed_s=float(row["elapsed_s"]),
            stats=ReductionStats(
                loop_iterations=int(row["loop_iterations"]),
                insertions=int(row["insertions"]),
            ),
        )

    def to_json(self) -> dict:
        return {
            "algo": self.algo,
            "dim": self.dim,
            "seed": self.seed,
            "preprocess": self.preprocess,
            "hermite_root": self.hermite_root if math.isfinite(self.hermite_root) else None,
            "elapsed_s": self.elapsed_s,
            "status": self.status,
            "message": self.message,
            "stats": self.stats.to_dict(),
        }


def write_csv(csv_path, records) -> int:
    csv_path = Path(csv_path)
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for record in records:
            if record.ok:
                writer.writerow(record.csv_row())
                count += 1
    return count


def read_csv(csv_path) -> list:
    with open(csv_path, "r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{csv_path}: missing columns {sorted(missing)}")
        return [BenchRecord.from_csv_row(row) for row in reader]


def write_json_stream(json_path, records) -> int:
    return write_json_lines(json_path, (record.to_json() for record in records))
