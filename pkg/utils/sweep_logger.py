"""
Sweep Logger Module
Stores sweep rows as CSV or JSON and summarizes them
"""

import io
import json
import logging
from pathlib import Path
from typing import Dict, List, TextIO, Union

import numpy as np
import pandas as pd

from config.config import OUTPUT_CONFIG
from models.volume import SweepRow

logger = logging.getLogger(__name__)

CSV_COLUMNS = OUTPUT_CONFIG["csv_columns"]


class SweepLogger:
    """Writes sweep rows and computes summary statistics over them"""

    def __init__(self, rows: List[SweepRow]):
        """
        Args:
            rows: Rows produced by volume.sweep, in grid order
        """
        self.rows = rows

    def to_frame(self, with_diagnostics: bool = False) -> pd.DataFrame:
        columns = CSV_COLUMNS + (["diagnostics"] if with_diagnostics else [])
        records = [row.to_dict() for row in self.rows]
        df = pd.DataFrame(records, columns=CSV_COLUMNS + ["diagnostics"])[columns]
        for col in ("h", "dv_dh", "volume", "error"):
            df[col] = pd.to_numeric(df[col], errors="coerce").astype(float)
        return df

    def to_csv(self) -> str:
        """CSV text with a fixed header and 17 significant digits"""
        buffer = io.StringIO()
        self.to_frame().to_csv(
            buffer,
            index=False,
            float_format=OUTPUT_CONFIG["float_format"],
            lineterminator="\n",
            na_rep="",
        )
        return buffer.getvalue()

    def to_json(self) -> str:
        """JSON array of row objects, missing values as null"""
        return json.dumps([_finite_or_none(row.to_dict()) for row in self.rows], indent=2)

    def write(self, target: Union[Path, TextIO], fmt: str = "csv") -> None:
        """
        Write the rows to a path or an open text stream

        Args:
            target: File path or stream
            fmt: 'csv' or 'json'
        """
        text = self.to_csv() if fmt == "csv" else self.to_json() + "\n"
        if isinstance(target, (str, Path)):
            path = Path(target)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            logger.info(f"Wrote {len(self.rows)} sweep rows to {path}")
        else:
            target.write(text)

    def regime_changes(self) -> List[Dict[str, object]]:
        """Consecutive rows whose regime differs"""
        changes = []
        previous = None
        for row in self.rows:
            if row.regime is None:
                continue
            if previous is not None and row.regime != previous.regime:
                changes.append({"h_before": previous.h, "h_after": row.h,
                                "from": previous.regime, "to": row.regime})
            previous = row
        return changes

    def get_summary(self) -> Dict[str, object]:
        """
        Summary statistics of the sweep

        Returns:
            Dictionary with row and error counts, regime changes and the grid argmax of the volume
        """
        df = self.to_frame()
        failed = sum(1 for row in self.rows if row.diagnostics)
        summary = {
            "total_rows": len(df),
            "failed_rows": failed,
            "regime_changes": self.regime_changes(),
            "h_at_max_volume": None,
            "max_volume": None,
        }
        volumes = df["volume"].dropna()
        if not volumes.empty:
            idx = volumes.idxmax()
            summary["h_at_max_volume"] = float(df.at[idx, "h"])
            summary["max_volume"] = float(volumes.max())
        return summary


def load_sweep(path: Path) -> pd.DataFrame:
    """Read a sweep CSV back; empty frame on failure"""
    try:
        return pd.read_csv(path, dtype={"regime": str, "method": str}, float_precision="round_trip")
    except Exception as e:
        logger.error(f"Error loading sweep file {path}: {e}")
        return pd.DataFrame(columns=CSV_COLUMNS)


def _finite_or_none(record: Dict[str, object]) -> Dict[str, object]:
    out = {}
    for key, value in record.items():
        if isinstance(value, float) and not np.isfinite(value):
            value = None
        out[key] = value
    return out
