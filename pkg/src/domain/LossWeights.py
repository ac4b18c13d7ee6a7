from pydantic import BaseModel, Field, model_validator


class LossWeights(BaseModel):
    alpha: float = Field(1.0, ge=0)
    beta: float = Field(1.0, ge=0)

    @model_validator(mode="after")
    def check_not_both_zero(self):
        if self.alpha + self.beta <= 0:
            raise ValueError("At least one of alpha and beta must be positive")
        return self
