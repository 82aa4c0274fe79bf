"""
Job specifications and report models for the command line.
"""
import json
import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from config.settings import (
    DEFAULT_DEGREE_BOUND,
    DEFAULT_SAMPLES,
    MAX_DEPTH,
    OUTPUT_FORMAT,
    RANDOM_SEED,
    validate_config,
)
from exceptions import JobSpecError

logger = logging.getLogger(__name__)


def parse_int_list(text: Optional[str], name: str) -> Optional[List[int]]:
    """'2,1' -> [2, 1]; None stays None."""
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise JobSpecError(f"--{name} expects comma-separated integers, got {text!r}")


def parse_chi(text: Optional[str]) -> Optional[Dict[str, List[int]]]:
    """JSON map {point: weight}, e.g. '{"1": [1, 0], "-1": [0, 1]}'."""
    if text is None:
        return None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise JobSpecError(f"--chi is not valid JSON: {e}")
    if not isinstance(data, dict) or not all(isinstance(w, list) for w in data.values()):
        raise JobSpecError("--chi must map point strings to weight lists")
    return {str(k): v for k, v in data.items()}


class JobSpec(BaseModel):
    command: str = Field(..., description="Subcommand: fold, algebra, weyl, xi, hwalg or verify")
    suite: Optional[str] = Field(None, description="Verification suite for the verify command")
    type_label: str = Field("A", description="Cartan type letter of g")
    rank: int = Field(1, description="Rank of g", ge=1)
    perm: Optional[List[int]] = Field(None, description="Diagram automorphism as 1-based node images")
    lam: Optional[List[int]] = Field(None, description="Dominant weight (of g_0 for twisted jobs)")
    chi: Optional[Dict[str, List[int]]] = Field(None, description="Function on points as {point: weight}")
    symmetrize: bool = Field(False, description="Complete chi to an equivariant function first")
    depth: Optional[int] = Field(None, description="First truncation depth", ge=1)
    max_depth: int = Field(MAX_DEPTH, description="Deepening gives up beyond this depth", ge=1)
    bound: int = Field(DEFAULT_DEGREE_BOUND, description="Loop degree bound for highest-weight algebra checks", ge=0)
    samples: int = Field(DEFAULT_SAMPLES, description="Number of sampled functions", ge=1)
    seed: int = Field(RANDOM_SEED, description="Seed for sampled functions")
    matrices: bool = Field(False, description="Include action matrices in module reports")
    output_format: str = Field(OUTPUT_FORMAT, description="json, csv or text")
    out: Optional[str] = Field(None, description="Output path (stdout when missing)", exclude=True)

    @field_validator("type_label")
    @classmethod
    def upper_type(cls, value: str) -> str:
        if len(value) != 1 or value.upper() not in "ABCDEFG":
            raise ValueError(f"unknown Cartan type {value!r}")
        return value.upper()

    @field_validator("output_format")
    @classmethod
    def known_format(cls, value: str) -> str:
        if value not in ("json", "csv", "text"):
            raise ValueError(f"unknown output format {value!r}")
        return value

    @property
    def perm0(self) -> Optional[List[int]]:
        """0-based permutation."""
        return [p - 1 for p in self.perm] if self.perm is not None else None

    @classmethod
    def from_namespace(cls, args, defaults: Optional[Dict[str, Any]] = None) -> "JobSpec":
        values = dict(defaults or {})
        values.update({
            "command": args.command,
            "suite": getattr(args, "suite", None),
            "type_label": getattr(args, "type", None) or "A",
            "rank": getattr(args, "rank", None) or 1,
            "perm": parse_int_list(getattr(args, "perm", None), "perm"),
            "lam": parse_int_list(getattr(args, "lam", None), "lambda"),
            "chi": parse_chi(getattr(args, "chi", None)),
            "symmetrize": bool(getattr(args, "symmetrize", False)),
            "depth": getattr(args, "depth", None),
            "matrices": bool(getattr(args, "matrices", False)),
            "output_format": getattr(args, "format", None) or OUTPUT_FORMAT,
            "out": getattr(args, "out", None),
        })
        for name in ("bound", "samples", "seed"):
            if getattr(args, name, None) is not None:
                values[name] = getattr(args, name)
        if "samples" in values:
            values["samples"] = validate_config("DEFAULT_SAMPLES", values["samples"])
        try:
            return cls(**values)
        except ValidationError as e:
            raise JobSpecError(f"Invalid job: {e.errors()[0]['msg']}")


class Report(BaseModel):
    """What every command returns: the job and its result."""

    job: JobSpec
    result: Dict[str, Any] = Field(default_factory=dict)
    tables: Dict[str, List[List[str]]] = Field(default_factory=dict, description="Named CSV/text tables")

    @property
    def passed(self) -> bool:
        return True


class VerificationReport(Report):
    passed_all: bool = Field(..., description="True iff every check passed")
    checks: Dict[str, bool] = Field(default_factory=dict)
    witnesses: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.passed_all
