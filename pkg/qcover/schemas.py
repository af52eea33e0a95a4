from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveInt

import qcover.config as config


# --- Input files ---

class RackFile(BaseModel):
    name: str = ""
    elements: List[str]
    table: List[List[int]]
    # tables printed with the acting element on the rows
    row_acts: bool = False


class GroupFile(BaseModel):
    name: str = ""
    elements: List[str]
    cayley: List[List[int]]


class HomFile(BaseModel):
    dom: Union[str, RackFile]
    cod: Union[str, RackFile]
    map: List[int]


# --- Run configuration ---

class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: PositiveInt = config.SEED
    closure_cap: PositiveInt = config.CLOSURE_CAP
    horn_samples: PositiveInt = config.HORN_SAMPLES
    rewrite_depth: PositiveInt = config.REWRITE_DEPTH
    samples: PositiveInt = config.SUITE_SAMPLES
    free_samples: PositiveInt = config.FREE_SAMPLES
    kernel_samples: PositiveInt = config.KERNEL_SAMPLES
    output: Literal["text", "json", "dot"] = "text"


# --- Reports ---

class Report(BaseModel):
    op: str
    verdict: Optional[bool] = None
    witness: Optional[Any] = None
    methods: Dict[str, Any] = Field(default_factory=dict)
    result: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class PropertyOutcome(BaseModel):
    name: str
    module: str
    passed: int
    failed: int
    skipped: int = 0
    witness: Optional[str] = None


class SuiteSummary(BaseModel):
    seed: int
    samples: int
    properties: List[PropertyOutcome]

    @property
    def ok(self) -> bool:
        return all(p.failed == 0 for p in self.properties)
