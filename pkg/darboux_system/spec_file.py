"""
Reader for the line-oriented system-spec format:

    [vars]      n = 2   base = 0 0
    [unknown]   name = u   index = 1 2
    [equation]  unknown = u  axis = 1  rhs = "u"
    [data]      unknown = u  expr = "1"      # comment
    [solve]     halfwidth = 0.3   points = 129
    [picard]    tol = 1e-12   max_iter = 200   init = data_extension
    [check]     samples = 4096   tol = 1e-10   u_radius = 1   x_radius = 0.3 0.3

Reference (candidate) files hold ``[reference]`` lines only:

    [reference] unknown = u  component = 1  expr = "exp(x1 + x2)"
"""

import logging
import re
import shlex
from typing import Callable, Dict, List, Sequence, Tuple

from darboux_system.types import exception_reasons
from darboux_system.types.exceptions import SpecFileError
from darboux_system.types.multi_index import MultiIndex
from darboux_system.types.spec_file_types import FileSettings, ReferenceFile, SystemFile
from darboux_system.types.system_types import SystemSpec, UnknownSpec
from expression_dsl.calculus import free_vars
from expression_dsl.parser import parse
from expression_dsl.types.exceptions import ExpressionError

LOG = logging.getLogger(__name__)

SECTION_LINE = re.compile(r"\s*\[(?P<section>[^\]]*)\](?P<rest>.*)")
INIT_MODES = ("data_extension", "zeros")


# ---------------------------------------------------------------- value converters


def _one(values: Sequence[str]) -> str:
    if len(values) != 1:
        raise ValueError("expected a single value")
    return values[0]


def _word(values):
    return _one(values)


def _integer(values):
    return int(_one(values))


def _float(values):
    return float(_one(values))


def _integers(values):
    return tuple(int(v) for v in values)


def _floats(values):
    return tuple(float(v) for v in values)


def _expression(values):
    return parse(" ".join(values))


def _init_mode(values):
    mode = _one(values)
    if mode not in INIT_MODES:
        raise ValueError(f"expected one of {', '.join(INIT_MODES)}")
    return mode


Converter = Callable[[Sequence[str]], object]

REFERENCE_KEYS: Dict[str, Converter] = {
    "unknown": _word,
    "component": _integer,
    "expr": _expression,
}

SYSTEM_SECTIONS: Dict[str, Dict[str, Converter]] = {
    "vars": {"n": _integer, "base": _floats},
    "unknown": {"name": _word, "index": _integers, "dim": _integer},
    "equation": {"unknown": _word, "axis": _integer, "component": _integer, "rhs": _expression},
    "data": {"unknown": _word, "component": _integer, "expr": _expression},
    "solve": {"halfwidth": _floats, "points": _integers},
    "picard": {"tol": _float, "max_iter": _integer, "init": _init_mode},
    "check": {"samples": _integer, "tol": _float, "u_radius": _float, "x_radius": _floats},
}

REFERENCE_SECTIONS: Dict[str, Dict[str, Converter]] = {
    "reference": REFERENCE_KEYS,
    "candidate": REFERENCE_KEYS,
}

REQUIRED_KEYS = {
    "vars": ("n",),
    "unknown": ("name", "index"),
    "equation": ("unknown", "axis", "rhs"),
    "data": ("unknown", "expr"),
    "reference": ("unknown", "expr"),
    "candidate": ("unknown", "expr"),
}


# ---------------------------------------------------------------- line reader


def _split(rest: str) -> List[str]:
    lexer = shlex.shlex(rest, posix=True, punctuation_chars="=")
    lexer.whitespace_split = True
    lexer.commenters = "#"
    return list(lexer)


def _pairs(tokens: List[str]) -> Dict[str, List[str]]:
    pairs = {}
    i = 0
    while i < len(tokens):
        if tokens[i] == "=" or i + 1 >= len(tokens) or tokens[i + 1] != "=":
            raise ValueError(f"expected 'key = value' at '{tokens[i]}'")
        key = tokens[i]
        j = i + 2
        while j < len(tokens) and not (j + 1 < len(tokens) and tokens[j + 1] == "="):
            j += 1
        if j == i + 2:
            raise ValueError(f"key '{key}' has no value")
        if key in pairs:
            raise ValueError(f"key '{key}' given twice")
        pairs[key] = tokens[i + 2 : j]
        i = j
    return pairs


def _read_lines(
    text: str, path: str, sections: Dict[str, Dict[str, Converter]]
) -> List[Tuple[int, str, Dict[str, object]]]:
    """
    :return: (line number, section, converted key values) per non-blank line
    """
    entries = []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue

        match = SECTION_LINE.match(raw)
        if match is None:
            raise SpecFileError(path, number, "expected a line starting with [section]")
        section = match["section"].strip()
        if section not in sections:
            raise SpecFileError(
                path,
                number,
                exception_reasons.UnknownSection.format(section=section, valid=", ".join(sections)),
            )
        keys = sections[section]

        try:
            pairs = _pairs(_split(match["rest"]))
        except ValueError as err:
            raise SpecFileError(path, number, str(err)) from err

        values = {}
        for key, tokens in pairs.items():
            if key not in keys:
                raise SpecFileError(
                    path,
                    number,
                    exception_reasons.UnknownKey.format(key=key, section=section, valid=", ".join(keys)),
                )
            try:
                values[key] = keys[key](tokens)
            except ExpressionError as err:
                raise SpecFileError(path, number, f"'{key}': {str(err).strip()}") from err
            except ValueError as err:
                raise SpecFileError(
                    path,
                    number,
                    exception_reasons.BadValue.format(key=key, values=" ".join(tokens), reason=err),
                ) from err

        for key in REQUIRED_KEYS.get(section, ()):
            if key not in values:
                raise SpecFileError(
                    path, number, exception_reasons.MissingKey.format(key=key, section=section)
                )
        entries.append((number, section, values))
    return entries


def _per_axis(values: Tuple, n: int, key: str, path: str, line: int) -> Tuple:
    if len(values) == 1:
        return values * n
    if len(values) != n:
        raise SpecFileError(
            path,
            line,
            exception_reasons.BadValue.format(
                key=key, values=" ".join(map(str, values)), reason=f"expected 1 or {n} values"
            ),
        )
    return values


# ---------------------------------------------------------------- system files


def read_system_text(text: str, path: str = "<text>") -> SystemFile:
    entries = _read_lines(text, path, SYSTEM_SECTIONS)

    variables = [(line, values) for line, section, values in entries if section == "vars"]
    if len(variables) != 1:
        line = variables[1][0] if variables else 0
        raise SpecFileError(path, line, "exactly one [vars] line is required")
    vars_line, vars_values = variables[0]
    n = vars_values["n"]
    if n < 1:
        raise SpecFileError(path, vars_line, "n must be positive")
    base = _per_axis(vars_values.get("base", (0.0,)), n, "base", path, vars_line)

    unknowns = []
    equations = {}
    data = {}
    settings = FileSettings()

    for line, section, values in entries:
        match section:
            case "unknown":
                try:
                    index = MultiIndex(values["index"], n)
                except ValueError as err:
                    raise SpecFileError(path, line, str(err)) from err
                unknowns.append(UnknownSpec(values["name"], index, values.get("dim", 1)))
            case "equation":
                key = (values["unknown"], values["axis"], values.get("component", 1))
                if key in equations:
                    raise SpecFileError(path, line, f"a second equation for {key[0]}_x{key[1]}")
                equations[key] = values["rhs"]
            case "data":
                key = (values["unknown"], values.get("component", 1))
                if key in data:
                    raise SpecFileError(path, line, f"a second data expression for {key[0]}")
                data[key] = values["expr"]
            case "solve":
                if "halfwidth" in values:
                    settings.halfwidth = _per_axis(values["halfwidth"], n, "halfwidth", path, line)
                if "points" in values:
                    settings.points = _per_axis(values["points"], n, "points", path, line)
            case "picard":
                settings.tol = values.get("tol", settings.tol)
                settings.max_iter = values.get("max_iter", settings.max_iter)
                settings.init = values.get("init", settings.init)
            case "check":
                settings.samples = values.get("samples", settings.samples)
                settings.check_tol = values.get("tol", settings.check_tol)
                settings.u_radius = values.get("u_radius", settings.u_radius)
                if "x_radius" in values:
                    settings.x_radius = _per_axis(values["x_radius"], n, "x_radius", path, line)

    system = SystemSpec(
        n=n, base_point=base, unknowns=tuple(unknowns), equations=equations, data=data
    )
    LOG.debug(f"Read {len(unknowns)} unknown(s) and {len(equations)} equation(s) from {path}")
    return SystemFile(path=path, system=system, settings=settings)


def _read_text_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as file:
            return file.read()
    except OSError as err:
        raise SpecFileError(path, 0, err.strerror or str(err)) from err


def read_system_file(path: str) -> SystemFile:
    return read_system_text(_read_text_file(path), path)


# ---------------------------------------------------------------- reference files


def read_reference_text(text: str, system: SystemSpec, path: str = "<text>") -> ReferenceFile:
    """
    Resolve ``unknown``/``component`` pairs to scalar component names of
    ``system``; expressions may use the independent variables only.
    """
    declared = {unknown.name: unknown for unknown in system.unknowns}
    allowed = set(system.x_names)
    expressions = {}

    for line, _, values in _read_lines(text, path, REFERENCE_SECTIONS):
        unknown = declared.get(values["unknown"])
        if unknown is None:
            raise SpecFileError(path, line, f"'{values['unknown']}' is not an unknown of the system")
        component = values.get("component", 1)
        if not 1 <= component <= unknown.dim:
            raise SpecFileError(path, line, f"{unknown.name} has no component {component}")

        extra = free_vars(values["expr"]) - allowed
        if extra:
            raise SpecFileError(
                path, line, f"reference expressions may only use {', '.join(sorted(allowed))}"
            )
        name = unknown.component_names[component - 1]
        if name in expressions:
            raise SpecFileError(path, line, f"a second expression for {name}")
        expressions[name] = values["expr"]

    return ReferenceFile(path=path, expressions=expressions)


def read_reference_file(path: str, system: SystemSpec) -> ReferenceFile:
    return read_reference_text(_read_text_file(path), system, path)
