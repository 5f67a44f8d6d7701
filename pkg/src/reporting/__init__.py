"""Output formatting and writing."""

from src.reporting.formatter import format_check_summary, format_csv, format_json, format_poly_info
from src.reporting.writer import ReportWriter

__all__ = ["ReportWriter", "format_check_summary", "format_csv", "format_json", "format_poly_info"]
