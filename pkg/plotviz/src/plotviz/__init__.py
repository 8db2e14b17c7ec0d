"""Figure rendering for pairflight CSV output.

Consumes only the CSV files written by the pairflight command line (never
recomputes any physics) and renders the five standard figure analogues.
"""

from .figures import FIGURES, FigureSpec, render
from .io import CsvError, CsvTable, load_csv

__version__ = "0.1.0"

__all__ = [
    "FIGURES",
    "FigureSpec",
    "render",
    "CsvError",
    "CsvTable",
    "load_csv",
    "__version__",
]
