from typing import TypedDict, List, Dict, Any, Optional
from datetime import datetime


class RunState(TypedDict, total=False):
    # Input
    command: str
    params: Dict[str, Any]
    prec: int
    threads: int

    # Results
    columns: List[str]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any]
    passed: bool

    # Output
    output_format: str  # csv, json
    output_path: Optional[str]

    # Bookkeeping
    start_time: datetime
    end_time: Optional[datetime]
    errors: List[Dict[str, Any]]
