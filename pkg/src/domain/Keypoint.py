from pydantic import BaseModel, ConfigDict


class Keypoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    score: float

    @property
    def position(self) -> tuple[float, float]:
        return self.x, self.y
