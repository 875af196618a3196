"""Ring descriptors."""

from typing import Annotated, List, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from atomspec.schemas.documents import FpAlgebraDocument, RingDocument


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ZmodSpec(_Spec):
    """Integers modulo ``n``."""

    family: Literal["zmod"] = "zmod"
    n: int = Field(..., ge=1)


class MatSpec(_Spec):
    """Full ``k×k`` matrices over the prime field of order ``p``."""

    family: Literal["mat"] = "mat"
    k: int = Field(..., ge=1)
    p: int = Field(..., ge=2)


class Tri2Spec(_Spec):
    """Lower triangular ``2×2`` matrices over the prime field of order ``p``."""

    family: Literal["tri2"] = "tri2"
    p: int = Field(..., ge=2)


class ProdSpec(_Spec):
    """Direct product of finitely many rings."""

    family: Literal["prod"] = "prod"
    factors: List["RingSpec"] = Field(..., min_length=1)


class TablesSpec(_Spec):
    family: Literal["tables"] = "tables"
    document: RingDocument


class FpAlgebraSpec(_Spec):
    family: Literal["fp_algebra"] = "fp_algebra"
    document: FpAlgebraDocument


RingSpec = Annotated[
    Union[ZmodSpec, MatSpec, Tri2Spec, ProdSpec, TablesSpec, FpAlgebraSpec],
    Field(discriminator="family"),
]

ProdSpec.model_rebuild()
