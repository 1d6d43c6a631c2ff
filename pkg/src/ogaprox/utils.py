# util and helper functions for ogaprox: errors, tolerances, vectors, config

import logging
import math

import numpy as np
import yaml
from numpy.typing import NDArray

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]
PrimalPoint = Vector  # x in R^{n1}
DualPoint = Vector  # y in R^{n2}
ExtendedReal = float  # plain float; +inf / -inf are the extended tags

ZERO_GUARD = 1e-300  # |y| below this counts as zero for the adversarial step
STEP_RTOL = 1e-10  # per-step identities
SUM_RTOL = 1e-8  # inequalities accumulating k terms
WEIGHT_CAP = 1e300  # raw weights above this are only carried in log form


class OGAProxError(Exception):
    """base error, carries the cli exit code it maps to"""
    exit_code = 3


class ConstraintViolated(OGAProxError, ValueError):
    exit_code = 2


class EpsilonOutOfRange(ConstraintViolated):
    exit_code = 2


class DimensionMismatch(OGAProxError, ValueError):
    exit_code = 2


class MissingSaddle(OGAProxError):
    exit_code = 2


class InsufficientData(OGAProxError, ValueError):
    exit_code = 2


class MalformedTrace(OGAProxError):
    exit_code = 2


class IndeterminateValue(OGAProxError, ArithmeticError):
    exit_code = 3


class OracleDomainError(OGAProxError):
    exit_code = 3


class NonFiniteIterate(OGAProxError, FloatingPointError):
    exit_code = 3


def as_vector(value, dim=None, name="vector"):
    """convert a scalar / sequence / array to a 1-d float64 array

    :param value: coordinates
    :type value: float or Sequence[float] or numpy.ndarray
    :param dim: expected dimension, defaults to None (any)
    :type dim: int, optional
    :param name: label used in the error message
    :type name: str, optional
    :return: 1-d copy of the coordinates
    :rtype: numpy.ndarray
    """
    vec = np.array(value, dtype=np.float64).reshape(-1)
    if vec.size == 0:
        raise DimensionMismatch(f"{name} is empty")
    if dim is not None and vec.size != dim:
        raise DimensionMismatch(f"{name} has dimension {vec.size}, expected {dim}")
    return vec


def parse_vector(text):
    """parse a vector literal like "1", "1,2" or "[1, -0.5]"

    :param text: comma separated numbers, brackets optional
    :type text: str
    :return: parsed vector
    :rtype: numpy.ndarray
    """
    if isinstance(text, (int, float, list, tuple, np.ndarray)):
        return as_vector(text)
    cleaned = str(text).strip().strip("[]()")
    try:
        return as_vector([float(tok) for tok in cleaned.split(",") if tok.strip()])
    except ValueError as err:
        raise ConstraintViolated(f"cannot parse vector literal {text!r}") from err


def sq_norm(v):
    return float(np.dot(v, v))


def norm(v):
    return float(np.linalg.norm(v))


def tolerance(lhs, rhs, rtol):
    """absolute-plus-relative tolerance for comparing lhs <= rhs

    :return: rtol * (1 + |lhs| + |rhs|)
    :rtype: float
    """
    return rtol * (1.0 + abs(lhs) + abs(rhs))


def ext_sub(a, b):
    """extended-real a - b; indeterminate forms raise instead of giving NaN

    :param a: minuend, may be +-inf
    :type a: float
    :param b: subtrahend, may be +-inf
    :type b: float
    :return: a - b
    :rtype: float
    """
    a, b = float(a), float(b)
    if math.isnan(a) or math.isnan(b):
        raise IndeterminateValue("NaN in extended-real arithmetic")
    if math.isinf(a) and math.isinf(b) and a == b:
        raise IndeterminateValue(f"indeterminate form {a} - {b}")
    return a - b


def require_finite(vec, what):
    if not np.isfinite(vec).all():
        raise NonFiniteIterate(f"{what} became non-finite: {vec}")
    return vec


def sample_box(rng, count, dim, radius):
    """seeded uniform samples in the box [-radius, radius]^dim

    :return: array of shape (count, dim)
    :rtype: numpy.ndarray
    """
    return rng.uniform(-radius, radius, size=(count, dim))


def get_config(cfg_file):
    """load a yaml run configuration

    :param cfg_file: path of the yaml file
    :type cfg_file: str
    :return: configuration mapping, empty when the file is empty
    :rtype: dict
    """
    with open(cfg_file, 'r') as ymlfile:
        cfg = yaml.load(ymlfile, Loader=yaml.FullLoader)
    if cfg is None:
        return {}
    if not isinstance(cfg, dict):
        raise ConstraintViolated(f"config {cfg_file} is not a mapping")
    return cfg


def setup_logging(verbose=False):
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
