"""Ring and module file documents."""

from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Table = List[List[int]]


def _check_table(name: str, table: Table, rows: int, cols: int, bound: int) -> None:
    if len(table) != rows:
        raise ValueError(f"{name} has {len(table)} rows, expected {rows}")
    for i, row in enumerate(table):
        if len(row) != cols:
            raise ValueError(f"{name}[{i}] has {len(row)} columns, expected {cols}")
        for j, value in enumerate(row):
            if not 0 <= value < bound:
                raise ValueError(
                    f"{name}[{i}][{j}] = {value} out of range 0..{bound - 1}"
                )


class RingDocument(BaseModel):
    """Explicit tables for a finite ring."""

    model_config = ConfigDict(extra="forbid")

    order: int = Field(..., ge=1)
    one: int = Field(..., ge=0)
    add: Table
    mul: Table

    @model_validator(mode="after")
    def check_tables(self) -> "RingDocument":
        if self.one >= self.order:
            raise ValueError(f"one = {self.one} out of range 0..{self.order - 1}")
        _check_table("add", self.add, self.order, self.order, self.order)
        _check_table("mul", self.mul, self.order, self.order, self.order)
        return self


class FpAlgebraDocument(BaseModel):
    """A prime-field algebra given by structure constants.

    ``structure_constants[i][j][k]`` is the coefficient of ``e_k`` in
    ``e_i e_j``.
    """

    model_config = ConfigDict(extra="forbid")

    p: int = Field(..., ge=2)
    dim: int = Field(..., ge=0)
    structure_constants: List[List[List[int]]]
    unit_vector: List[int]

    @model_validator(mode="after")
    def check_shapes(self) -> "FpAlgebraDocument":
        d = self.dim
        if len(self.unit_vector) != d:
            raise ValueError(f"unit_vector has {len(self.unit_vector)} entries, expected {d}")
        for k, value in enumerate(self.unit_vector):
            if not 0 <= value < self.p:
                raise ValueError(f"unit_vector[{k}] = {value} out of range 0..{self.p - 1}")
        if len(self.structure_constants) != d:
            raise ValueError(f"structure_constants has {len(self.structure_constants)} rows, expected {d}")
        for i, plane in enumerate(self.structure_constants):
            _check_table(f"structure_constants[{i}]", plane, d, d, self.p)
        return self


class FpAlgebraFile(BaseModel):
    """Wrapper for the ``fp_algebra`` file form."""

    model_config = ConfigDict(extra="forbid")

    fp_algebra: FpAlgebraDocument


RingFile = Union[RingDocument, FpAlgebraFile]


class ModuleDocument(BaseModel):
    """A finite right module together with its ring."""

    model_config = ConfigDict(extra="forbid")

    ring: RingDocument
    order: int = Field(..., ge=1)
    add: Table
    act: Table

    @model_validator(mode="after")
    def check_tables(self) -> "ModuleDocument":
        _check_table("add", self.add, self.order, self.order, self.order)
        _check_table("act", self.act, self.order, self.ring.order, self.order)
        return self
