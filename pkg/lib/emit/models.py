from typing import Optional

from pydantic import BaseModel, NonNegativeInt


class RunStats(BaseModel):
    """One unfolding run, in the columns of the usual benchmark table"""

    model: Optional[str]
    nodes: NonNegativeInt
    events: NonNegativeInt
    events_with_cutoffs: NonNegativeInt
    conditions: NonNegativeInt
    reachable_states: NonNegativeInt
    complete: bool = True
    reason: Optional[str] = None
    runtime_ms: Optional[int] = None
