import argparse
import shlex
from typing import Any, Dict, Mapping, Optional, Sequence, Union

from pydantic import ValidationError

from ..config.law_kind import LawKind
from ..errors import InvalidParameterError, UsageError
from .base import RadiusLaw
from .catalog import DiracLaw, PowerLaw, TruncRecipExpLaw, WeibullLaw
from .composite import ScaledLaw, ShiftedLaw

LawSpec = Union[Mapping[str, Any], RadiusLaw]


class LawFactory:
    """
    Factory building radius laws from plain specifications.

    A specification is a mapping with a `kind` tag (see `LawKind`) and the
    parameters of that kind; composite kinds nest the inner specification.

    Examples:
        >>> LawFactory.create({"kind": "power", "alpha": 0.5}).cdf(0.25)
        0.5
        >>> LawFactory.create({"kind": "shifted", "eta0": 0.5, "inner": {"kind": "uniform"}}).eta
        0.5
    """

    @staticmethod
    def create(spec: LawSpec) -> RadiusLaw:
        """
        Create a law from its specification.

        Raises:
            InvalidParameterError: If the kind is unknown or a parameter is invalid.
        """
        if isinstance(spec, RadiusLaw):
            return spec
        payload: Dict[str, Any] = dict(spec)
        kind = payload.pop("kind", None)
        try:
            if kind == LawKind.POWER:
                return PowerLaw(**payload)
            elif kind == LawKind.UNIFORM:
                LawFactory._no_parameters(kind, payload)
                return PowerLaw(alpha=1.0)
            elif kind == LawKind.DIRAC:
                return DiracLaw(**payload)
            elif kind == LawKind.WEIBULL:
                return WeibullLaw(**payload)
            elif kind == LawKind.TRUNCRECIPEXP:
                LawFactory._no_parameters(kind, payload)
                return TruncRecipExpLaw()
            elif kind == LawKind.SHIFTED:
                return ShiftedLaw(**payload)
            elif kind == LawKind.SCALED:
                return ScaledLaw(**payload)
            elif kind == LawKind.TABULATED:
                raise InvalidParameterError(
                    "tabulated laws are built from section tables, not from specifications"
                )
            else:
                raise InvalidParameterError(
                    f"Unknown law kind: {kind}, available kinds: {LawKind.values()}"
                )
        except ValidationError as e:
            raise InvalidParameterError(f"invalid parameters for {kind} law: {e}") from e

    @staticmethod
    def _no_parameters(kind: str, payload: Mapping[str, Any]) -> None:
        if payload:
            raise InvalidParameterError(
                f"{kind} law takes no parameters, got {sorted(payload)}"
            )


def make_law(spec: LawSpec) -> RadiusLaw:
    """Shorthand for `LawFactory.create`."""
    return LawFactory.create(spec)


def add_law_arguments(parser: argparse.ArgumentParser, required: bool = True) -> None:
    """Register the law grammar (`--law power --alpha 0.5`, ...) on a parser."""
    group = parser.add_argument_group("radius law")
    group.add_argument("--law", required=required, choices=LawKind.values()[:-1])
    group.add_argument("--alpha", type=float)
    group.add_argument("--lambda", dest="lam", type=float)
    group.add_argument("--rho", type=float)
    group.add_argument("--eta0", type=float)
    group.add_argument("--scale", type=float)
    group.add_argument("--inner", type=str, help='nested law, e.g. --inner "power --alpha 0.5"')


def law_spec_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """
    Turn parsed law arguments into a specification mapping.

    Raises:
        UsageError: If a parameter required by the chosen kind is missing.
    """
    kind = args.law

    def need(name: str, flag: str) -> Any:
        value = getattr(args, name, None)
        if value is None:
            raise UsageError(f"--law {kind} requires {flag}")
        return value

    if kind == LawKind.POWER:
        return {"kind": kind, "alpha": need("alpha", "--alpha")}
    if kind == LawKind.WEIBULL:
        return {"kind": kind, "alpha": need("alpha", "--alpha"), "lam": need("lam", "--lambda")}
    if kind == LawKind.DIRAC:
        return {"kind": kind, "rho": need("rho", "--rho")}
    if kind == LawKind.SHIFTED:
        return {"kind": kind, "eta0": need("eta0", "--eta0"), "inner": parse_law_spec(need("inner", "--inner"))}
    if kind == LawKind.SCALED:
        return {"kind": kind, "factor": need("scale", "--scale"), "inner": parse_law_spec(need("inner", "--inner"))}
    return {"kind": kind}


def parse_law_spec(text: Union[str, Sequence[str]]) -> Dict[str, Any]:
    """
    Parse a law written in the command-line grammar.

    Args:
        text: Either a string such as "power --alpha 0.5" (the leading `--law`
            is optional) or the equivalent token list.

    Examples:
        >>> parse_law_spec("shifted --eta0 0.5 --inner 'power --alpha 2'")
        {'kind': 'shifted', 'eta0': 0.5, 'inner': {'kind': 'power', 'alpha': 2.0}}
    """
    tokens = shlex.split(text) if isinstance(text, str) else list(text)
    if tokens and not tokens[0].startswith("--"):
        tokens = ["--law", *tokens]
    parser = _LawParser(prog="law", add_help=False)
    add_law_arguments(parser)
    args, extra = parser.parse_known_args(tokens)
    if extra:
        raise UsageError(f"unrecognised law arguments: {' '.join(extra)}")
    return law_spec_from_args(args)


class _LawParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"invalid law specification: {message}")


__all__ = [
    "LawFactory",
    "LawSpec",
    "make_law",
    "add_law_arguments",
    "law_spec_from_args",
    "parse_law_spec",
]
