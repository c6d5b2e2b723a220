from ..config.law_kind import EvtVariant
from ..errors import InvalidParameterError, UnsupportedCaseError
from .base import EvtClass


def predict_beta(evt_class: EvtClass, eta: float, r: int) -> float:
    """
    Weibull index of the min-domain of the section law F^(r).

    Args:
        evt_class (EvtClass): Declared class of the radius law.
        eta (float): Lower endpoint of the radius law.
        r (int): Codimension n - k of the section.

    Returns:
        float: 2 when eta > 0, for the Gumbel class and for r >= 2; otherwise
        min(alpha + 1, 2) for a Weibull(alpha) law sectioned once.

    Raises:
        UnsupportedCaseError: For the Frechet class.
        InvalidParameterError: For r < 1 or eta < 0.

    Examples:
        >>> predict_beta(EvtClass.weibull(0.5), 0.0, 1)
        1.5
    """
    if int(r) != r or r < 1:
        raise InvalidParameterError(f"codimension r must be a positive integer, got {r}")
    if eta < 0:
        raise InvalidParameterError(f"lower endpoint must be non-negative, got {eta}")
    if evt_class.variant == EvtVariant.FRECHET:
        raise UnsupportedCaseError("Frechet-class radius laws are not covered")
    if eta > 0 or evt_class.variant == EvtVariant.GUMBEL or r >= 2:
        return 2.0
    return min(float(evt_class.alpha) + 1.0, 2.0)


def section_domain(evt_class: EvtClass, eta: float, r: int) -> EvtClass:
    """Declared class of F^(r): Weibull with the predicted index."""
    return EvtClass.weibull(predict_beta(evt_class, eta, r))


__all__ = ["predict_beta", "section_domain"]
