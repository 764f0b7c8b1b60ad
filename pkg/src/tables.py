#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Table assembly and output.

This module provides functionality to turn Pascal triangles, prediction
tables, cohomology reports and characteristic-zero rows into pandas
DataFrames and to render them as text, CSV or JSON.
"""

import json
import logging
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import pandas as pd

from src.exceptions import ArgError
from src.homology import CohomologyReport

# Logger setup
logger = logging.getLogger(__name__)

TABLE_FORMATS = ("text", "csv", "json")


def _frame(rows: Mapping[Any, Mapping[Any, Any]], index_name: str, column_name: str) -> pd.DataFrame:
    """Sparse nested mapping to a DataFrame with sorted axes and empty strings for holes."""
    columns = sorted({c for row in rows.values() for c in row})
    data = [[row.get(c, "") for c in columns] for row in rows.values()]
    df = pd.DataFrame(data, index=pd.Index(list(rows), name=index_name), columns=pd.Index(columns, name=column_name))
    return df.astype(str)


def pascal_frame(triangle: Sequence[Sequence[Sequence[int]]]) -> pd.DataFrame:
    """Rows n, columns k, cells the comma-separated cyclotomic indices of [n; k]."""
    rows = {n: {k: ",".join(str(d) for d in indices) for k, indices in enumerate(row)}
            for n, row in enumerate(triangle)}
    return _frame(rows, "n", "k")


def ext_frame(table: Mapping[int, Mapping[int, str]]) -> pd.DataFrame:
    """Rows n, columns j; cells already formatted."""
    return _frame(table, "n", "j")


def h_rows_frame(rows: Sequence[Tuple[str, Mapping[int, str]]]) -> pd.DataFrame:
    """One row per shifted copy of H_k, columns the cohomological degrees (descending)."""
    df = _frame({label: dict(cells) for label, cells in rows}, "summand", "degree")
    return df[sorted(df.columns, reverse=True)]


def report_frame(report: CohomologyReport) -> pd.DataFrame:
    """Degree and group (integral) or dimension (field), nonzero degrees only."""
    records = [{"degree": d, "cohomology": str(value)} for d, value in sorted(report.nonzero().items(), reverse=True)]
    return pd.DataFrame(records, columns=["degree", "cohomology"]).set_index("degree")


def char0_frame(table: Mapping[int, Mapping[int, Any]]) -> pd.DataFrame:
    """Rows n, columns j, cells the classified groups; empty cells are zero."""
    return _frame({n: {j: str(cell) for j, cell in row.items()} for n, row in table.items()}, "n", "j")


def records_frame(records: List[Dict[str, Any]], index: str) -> pd.DataFrame:
    return pd.DataFrame(records).set_index(index)


def render(df: pd.DataFrame, fmt: str = "text") -> str:
    """
    Render a DataFrame.

    Args:
        df: Table to render
        fmt: "text", "csv" or "json"

    Returns:
        The rendered table, newline-terminated
    """
    if fmt == "csv":
        return df.to_csv(lineterminator="\n")
    if fmt == "json":
        records = {str(i): {str(c): v for c, v in row.items()} for i, row in df.to_dict(orient="index").items()}
        return json.dumps(records, indent=2) + "\n"
    if fmt == "text":
        if df.empty:
            return "(empty)\n"
        return df.to_string() + "\n"
    raise ArgError(f"Unknown table format: {fmt}")
