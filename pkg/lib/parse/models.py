from typing import Optional

from pydantic import BaseModel, root_validator, validator

from lib.constraints import ConstraintSet, InfluenceConstraint
from lib.exceptions import IllFormedConstraintError
from lib.model import Prn


class ModelFile(BaseModel):
    prn: Prn
    constraints: tuple[InfluenceConstraint, ...] = ()
    minmax: bool = False
    x0: tuple[int, ...]
    name: Optional[str] = None

    class Config:
        frozen = True

    @validator("constraints")
    def in_schedule_order(cls, v):
        return tuple(sorted(set(v), key=lambda c: c.sort_key))

    @root_validator(skip_on_failure=True)
    def fits_network(cls, values):
        prn = values["prn"]
        x0 = values["x0"]
        if len(x0) != prn.node_count:
            raise ValueError(f"initial state has {len(x0)} values for {prn.node_count} nodes")
        for name, value, m in zip(prn.names, x0, prn.max_values):
            if not 0 <= value <= m:
                raise ValueError(f"initial value {name}={value} is outside 0..{m}")
        try:
            ConstraintSet(frozenset(values["constraints"]), values["minmax"]).check(prn)
        except IllFormedConstraintError as err:
            raise ValueError(str(err)) from err
        return values

    @property
    def constraint_set(self) -> ConstraintSet:
        return ConstraintSet(frozenset(self.constraints), self.minmax)

    def without_constraints(self) -> "ModelFile":
        return ModelFile(prn=self.prn, x0=self.x0, name=self.name)
