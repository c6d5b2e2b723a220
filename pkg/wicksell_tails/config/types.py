from typing import Callable, Sequence, Tuple, Union

import numpy as np

ArrayLike = Union[float, Sequence[float], np.ndarray]
ScalarFunction = Callable[[float], float]
SamplerHandle = Callable[[int, np.random.Generator], np.ndarray]
Atom = Tuple[float, float]

__all__ = ["ArrayLike", "ScalarFunction", "SamplerHandle", "Atom"]
