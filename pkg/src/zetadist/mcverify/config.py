"""Verification settings and the key=value config file that mirrors the CLI flags."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from ..exactnum import is_prime
from ..lfunc import DirichletChar

SUITES = ("interpolation", "compatibility", "irregular")
# the irregular suite needs p up to 100, where layer 2 is already ~10^6 elements
SUITE_N_MAX = {"interpolation": 2, "compatibility": 2, "irregular": 1}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class VerificationConfig:
    suite: str = "interpolation"
    p: int = 5
    # None means the suite default (SUITE_N_MAX)
    n_max: int | None = None
    N: int = 8
    M_cap: int = 60
    chi: str = "chi:1:1:0:1"
    k_range: tuple = tuple(range(2, 21))
    S: tuple = ()
    c: int | None = None
    # base weight of the measure; None picks one per k (see suites.base_weight)
    k0: int | None = None
    negative_control: bool = True

    def __post_init__(self):
        if self.n_max is None:
            object.__setattr__(self, "n_max", SUITE_N_MAX.get(self.suite, 2))
        if not self.S:
            object.__setattr__(self, "S", (self.p,))
        object.__setattr__(self, "S", tuple(sorted(set(self.S))))
        object.__setattr__(self, "k_range", tuple(self.k_range))

    def validate(self) -> "VerificationConfig":
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.p == 2 or not is_prime(self.p):
            raise ConfigError(f"p must be an odd prime, got {self.p}")
        if self.p not in self.S:
            raise ConfigError(f"p = {self.p} must lie in S = {list(self.S)}")
        if any(not is_prime(ell) for ell in self.S):
            raise ConfigError(f"S must consist of primes: {list(self.S)}")
        if any(not 2 <= k <= 40 for k in self.k_range):
            raise ConfigError("k-range must lie within [2, 40]")
        if self.k0 is not None and not 2 <= self.k0 <= 40:
            raise ConfigError("k0 must lie within [2, 40]")
        if not 0 <= self.n_max <= 4:
            raise ConfigError("n_max must lie in [0, 4]")
        if self.N < 1:
            raise ConfigError("precision N must be positive")
        try:
            DirichletChar.parse(self.chi)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self

    @property
    def character(self) -> DirichletChar:
        return DirichletChar.parse(self.chi)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["k_range"] = list(self.k_range)
        d["S"] = list(self.S)
        return d

    def updated(self, **kw) -> "VerificationConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        if "p" in kw and "S" not in kw and self.S == (self.p,):
            kw["S"] = ()
        return replace(self, **kw)


def parse_int_list(text: str) -> tuple:
    """``2,6,10`` or ``2-20`` or a mix such as ``2-6,10``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)


_KEYS = {
    "suite": ("suite", str),
    "p": ("p", int),
    "n-max": ("n_max", int),
    "n_max": ("n_max", int),
    "N": ("N", int),
    "m-cap": ("M_cap", int),
    "chi": ("chi", str),
    "k": ("k_range", parse_int_list),
    "k-range": ("k_range", parse_int_list),
    "S": ("S", parse_int_list),
    "c": ("c", int),
    "k0": ("k0", int),
    "negative-control": ("negative_control", lambda s: s.strip().lower() in ("1", "true", "yes", "on")),
}


def parse_config_text(text: str) -> dict:
    """Key/value lines (``key = value``, ``#`` comments) to config field values."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-")
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name, conv = _KEYS[key]
        try:
            out[name] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return out


def load_config(path) -> dict:
    with open(path) as fh:
        return parse_config_text(fh.read())
