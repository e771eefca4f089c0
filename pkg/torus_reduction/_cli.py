from inspect import signature
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import click

from torus_reduction.conespline import dump_terms
from torus_reduction.conversion import parse_point, parse_vec
from torus_reduction.exactmath import Vec
from torus_reduction.exceptions import (
    InputDocumentError,
    NonRegularValueError,
    OracleError,
    PropertyCheckError,
    TorusReductionError,
)
from torus_reduction.model import SpaceKind, product_classes, product_space, unit_class
from torus_reduction.oracle import (
    OracleMethod,
    compare_exact,
    density_of,
    fiber_report,
    fixed_point_enumeration,
    grid_convolution_check,
    sphere_product_closed_form,
    support_of,
)
from torus_reduction.pairing import (
    ReducedSpace,
    cobordism_check,
    convolution_check,
    dh_derivative_check,
    dh_polynomial,
    pair,
    pair_via_convolution,
    polarization_check,
)
from torus_reduction.types import OutputDocument, Workspace
from torus_reduction.utils.logging import logger

Result = Tuple[Dict[str, Any], Optional[Tuple[int, ...]]]
CHECKS = ("polarization", "convolution", "cobordism", "derivative")


class CliContext:
    """
    The object handed to every command: the engine logger and the exit-code policy.
    """

    def __init__(self):
        self.logger = logger

    def abort(self, message: str, code: int = 1):
        self.logger.error(message)
        raise click.exceptions.Exit(code)


def _verbosity_callback(ctx, param, value):
    try:
        logger.set_level(value)
    except ValueError as err:
        raise click.BadParameter(str(err)) from err

    return value


def engine_cli_context():
    def decorator(f):
        f = click.option(
            "-v",
            "--verbosity",
            default="INFO",
            metavar="LEVEL",
            help="One of DEBUG, INFO, SUCCESS, WARNING or ERROR.",
            callback=_verbosity_callback,
            expose_value=False,
            is_eager=True,
        )(f)
        return click.make_pass_decorator(CliContext, ensure=True)(f)

    return decorator


def document_argument():
    return click.argument("document", metavar="FILE")


def space_option(required: bool = False):
    return click.option("--space", "space_name", required=required, help="Name of the space.")


def class_option(default: Optional[str] = "1"):
    return click.option(
        "--class",
        "class_name",
        default=default,
        show_default=True,
        help="Name of the class; '1', 'u1'.. and 'nu' are built in.",
    )


def xi_option(multiple: bool = False):
    return click.option(
        "--xi",
        multiple=multiple,
        help="Comma separated polarizing vector, e.g. '1,2'.",
    )


def product_options():
    def decorator(f):
        f = click.option(
            "--classes", help="Comma separated classes, one per factor of --product-of."
        )(f)
        return click.option("--product-of", help="Comma separated factor spaces.")(f)

    return decorator


def _names(value: Union[None, str, Sequence[str]]) -> List[str]:
    if value is None:
        return []

    elif isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]

    return [str(v) for v in value]


def _xi(value: Union[None, str, Sequence[int]]) -> Optional[Tuple[int, ...]]:
    if value is None or value == ():
        return None

    elif isinstance(value, str):
        try:
            return tuple(int(x) for x in value.split(","))
        except ValueError as err:
            raise InputDocumentError(f"'{value}' is not an integer vector.") from err

    return tuple(int(x) for x in value)


def _point(value: Any, rank: int) -> Vec:
    if isinstance(value, str):
        return parse_point(value, rank)

    return parse_vec(value, rank)


def _points(value: Any, rank: int) -> List[Vec]:
    if value is None:
        return []

    elif isinstance(value, (str, int)):
        return [_point(value, rank)]

    return [_point(v, rank) for v in value]


def _xis(value: Any) -> List[Tuple[int, ...]]:
    if not value:
        return []

    elif isinstance(value, str) or all(isinstance(x, int) for x in value):
        return [_xi(value)]  # type: ignore[list-item]

    return [_xi(x) for x in value]  # type: ignore[misc]


def run_pair(
    ws: Workspace,
    at: Any,
    space_name: Optional[str] = None,
    class_name: str = "1",
    xi: Any = None,
    product_of: Any = None,
    classes: Any = None,
    via_convolution: bool = False,
) -> Result:
    t = _point(at, ws.rank)
    xi = _xi(xi)
    if product_of:
        factors = ws.factor_pairs(_names(product_of), _names(classes))
        if via_convolution:
            result = pair_via_convolution(factors, t, xi=xi, config=ws.config)
        else:
            product = product_space(*(space for space, _ in factors))
            result = pair(product, product_classes(factors), t, xi=xi, config=ws.config)

        label = {"product_of": _names(product_of), "classes": _names(classes)}

    else:
        space = ws.space(space_name or "")
        result = pair(space, ws.cls(space.name, class_name), t, xi=xi, config=ws.config)
        label = {"space": space.name, "class": class_name}

    return {"command": "pair", **label, **result.to_json()}, result.xi


def run_volume(
    ws: Workspace, near: Any, space_name: Optional[str] = None, xi: Any = None
) -> Result:
    space = ws.space(space_name or "")
    reduced = ReducedSpace(space, xi=_xi(xi), config=ws.config)
    chamber = dh_polynomial(space, _point(near, ws.rank), xi=reduced.xi, config=ws.config)
    return {"command": "volume", "space": space.name, **chamber.to_json()}, reduced.xi


def run_pushforward(
    ws: Workspace,
    space_name: Optional[str] = None,
    class_name: str = "1",
    xi: Any = None,
    decompose: bool = False,
) -> Result:
    space = ws.space(space_name or "")
    cls = ws.cls(space.name, class_name)
    reduced = ReducedSpace(space, xi=_xi(xi), config=ws.config)
    result: Dict[str, Any] = {
        "command": "pushforward",
        "space": space.name,
        "class": class_name,
        "terms": [term.to_json() for term in reduced.terms(cls)],
    }
    if decompose:
        splines = reduced.splines(cls)
        result["atoms"] = {pid: dump_terms(spline) for pid, spline in splines.items()}
        result["discarded"] = {
            pid: {
                "lower_dim": spline.discarded_lower_dim,
                "point_supported": spline.discarded_point_supported,
            }
            for pid, spline in splines.items()
        }

    return result, reduced.xi


def run_check(
    ws: Workspace,
    what: str,
    at: Any = None,
    space_name: Optional[str] = None,
    class_name: str = "1",
    xi: Any = None,
    product_of: Any = None,
    classes: Any = None,
    beta: int = 0,
) -> Result:
    if what not in CHECKS:
        raise InputDocumentError(
            f"Unknown check '{what}'; expected one of {', '.join(CHECKS)}."
        )

    xis = _xis(xi)
    first_xi = xis[0] if xis else None
    points = _points(at, ws.rank) or [Vec.zero(ws.rank)]
    result: Dict[str, Any] = {"command": "check", "what": what}

    if what == "convolution":
        factor_names = _names(product_of) or list(ws.factors.get(space_name or "", ()))
        factors = ws.factor_pairs(factor_names, _names(classes))
        report = convolution_check(factors, points, xi=first_xi, config=ws.config, strict=False)
        result.update(report.to_json())
        product = product_space(*(space for space, _ in factors))
        return result, ReducedSpace(product, xi=first_xi, config=ws.config).xi

    space = ws.space(space_name or "")
    cls = ws.cls(space.name, class_name)
    result.update({"space": space.name, "class": class_name})
    if what == "polarization":
        report = polarization_check(
            space, cls, points, xis=xis or None, config=ws.config, strict=False
        )
        result.update(report.to_json())
        return result, None

    elif what == "cobordism":
        reports = [
            cobordism_check(space, cls, p, xi=first_xi, config=ws.config, strict=False)
            for p in points
        ]
        result["pass"] = all(r.passed for r in reports)
        result["reports"] = [r.to_json() for r in reports]
        return result, reports[0].xi

    derivative = dh_derivative_check(
        space, points[0], beta, xi=first_xi, config=ws.config, strict=False
    )
    result.update(derivative.to_json())
    return result, ReducedSpace(space, xi=first_xi, config=ws.config).xi


def run_oracle(
    ws: Workspace,
    method: str,
    at: Any = None,
    space_name: Optional[str] = None,
    class_name: str = "1",
    xi: Any = None,
    product_of: Any = None,
    classes: Any = None,
    step: Any = "1/1000",
    exponents: Any = None,
) -> Result:
    try:
        oracle_method = OracleMethod(method)
    except ValueError as err:
        raise InputDocumentError(f"Unknown oracle method '{method}'.") from err

    xi = _xi(xi)
    t = _point(at, ws.rank) if at is not None else Vec.zero(ws.rank)
    result: Dict[str, Any] = {"command": "oracle", "t": [str(x) for x in t]}

    if oracle_method == OracleMethod.GRID_CONVOLUTION:
        factors = ws.factor_pairs(_names(product_of), _names(classes))
        if len(factors) != 2:
            raise InputDocumentError("Grid convolution takes exactly two factors.")

        product = product_space(*(space for space, _ in factors))
        reduced = ReducedSpace(product, xi=xi, config=ws.config)
        engine_value = reduced.pair(product_classes(factors), t).value
        (left, a_cls), (right, b_cls) = factors
        step_value = _point(step, 1)[0]
        report = grid_convolution_check(
            density_of(left, a_cls, xi=reduced.xi, config=ws.config),
            density_of(right, b_cls, xi=reduced.xi, config=ws.config),
            float(t[0]),
            float(step_value),
            engine_value,
            support_of(left),
            config=ws.config,
        )
        result.update(report.to_json())
        return result, reduced.xi

    space = ws.space(space_name or "")
    cls = ws.cls(space.name, class_name)
    reduced = ReducedSpace(space, xi=xi, config=ws.config)
    engine_value = reduced.pair(cls, t).value
    result.update({"space": space.name, "class": class_name})

    if oracle_method in (OracleMethod.TRIANGULATION, OracleMethod.MONTE_CARLO):
        if space.kind != SpaceKind.LINEAR or cls != unit_class(space):
            raise OracleError("Fiber volumes apply to the class '1' of linear spaces.")

        point = space.points[0]
        report = fiber_report(
            point.weights, t - point.moment, engine_value, oracle_method, ws.config
        )

    elif oracle_method == OracleMethod.ENUMERATION:
        report = compare_exact(
            engine_value, fixed_point_enumeration(space, cls, t[0]), oracle_method
        )

    else:
        closed_form = sphere_product_closed_form([int(k) for k in _names(exponents)])
        report = compare_exact(engine_value, closed_form, oracle_method)

    result.update(report.to_json())
    return result, reduced.xi


RUNNERS: Dict[str, Callable[..., Result]] = {
    "pair": run_pair,
    "volume": run_volume,
    "pushforward": run_pushforward,
    "check": run_check,
    "oracle": run_oracle,
}


def _query_options(options: Dict[str, Any]) -> Dict[str, Any]:
    converted = {}
    for key, value in options.items():
        key = key.replace("-", "_")
        if key in ("space", "class"):
            key = f"{key}_name"

        converted[key] = value

    return converted


def _bind(runner: Callable[..., Result], ws: Workspace, options: Dict[str, Any]):
    try:
        signature(runner).bind(ws, **options)
    except TypeError as err:
        raise InputDocumentError(f"Bad options for '{runner.__name__}': {err}") from err

    return lambda: runner(ws, **options)


def _emit(cli_ctx: CliContext, runs: Sequence[Callable[[], Result]]):
    results = []
    xi = None
    try:
        for run in runs:
            result, used_xi = run()
            results.append(result)
            xi = used_xi if xi is None else xi

    except NonRegularValueError as err:
        witness: Dict[str, Any] = {
            "error": "non-regular value",
            "message": str(err),
            "t": [str(x) for x in err.t],
        }
        if err.term is not None:
            witness["atom"] = err.term.to_json()

        click.echo(OutputDocument(results=results + [witness]).render())
        cli_ctx.abort(str(err), code=2)

    except PropertyCheckError as err:
        cli_ctx.abort(str(err), code=3)

    except TorusReductionError as err:
        cli_ctx.abort(str(err), code=1)

    document = OutputDocument(xi=list(xi) if xi is not None else None, results=results)
    click.echo(document.render())
    failed = [r for r in results if r.get("pass") is False]
    if failed:
        cli_ctx.abort(f"{len(failed)} check(s) failed.", code=3)

    logger.success(f"{len(results)} result(s) computed.")


def _load(cli_ctx: CliContext, document: str) -> Workspace:
    try:
        return Workspace.load(document)
    except TorusReductionError as err:
        cli_ctx.abort(str(err), code=1)
        raise


@click.group()
def cli():
    """Exact pairings and volumes on symplectic reductions of torus spaces"""


@cli.command("pair")
@engine_cli_context()
@document_argument()
@space_option()
@class_option()
@click.option("--at", required=True, help="Point of reduction, e.g. '0,0' or '1/3'.")
@xi_option()
@product_options()
@click.option(
    "--via-convolution", is_flag=True, help="Convolve the factor terms of --product-of."
)
def pair_cmd(
    cli_ctx, document, space_name, class_name, at, xi, product_of, classes, via_convolution
):
    """Pair a class over the reduced space"""
    ws = _load(cli_ctx, document)
    _emit(
        cli_ctx,
        [
            lambda: run_pair(
                ws,
                at,
                space_name=space_name,
                class_name=class_name,
                xi=xi,
                product_of=product_of,
                classes=classes,
                via_convolution=via_convolution,
            )
        ],
    )


@cli.command("volume")
@engine_cli_context()
@document_argument()
@space_option(required=True)
@click.option("--near", required=True, help="A regular point of the chamber.")
@xi_option()
def volume_cmd(cli_ctx, document, space_name, near, xi):
    """Fit the volume polynomial of a chamber"""
    ws = _load(cli_ctx, document)
    _emit(cli_ctx, [lambda: run_volume(ws, near, space_name=space_name, xi=xi)])


@cli.command("pushforward")
@engine_cli_context()
@document_argument()
@space_option(required=True)
@class_option()
@xi_option()
@click.option("--decompose", is_flag=True, help="Also dump the cone-spline atoms.")
def pushforward_cmd(cli_ctx, document, space_name, class_name, xi, decompose):
    """Show the polarized fixed-point terms of a class"""
    ws = _load(cli_ctx, document)
    _emit(
        cli_ctx,
        [
            lambda: run_pushforward(
                ws, space_name=space_name, class_name=class_name, xi=xi, decompose=decompose
            )
        ],
    )


@cli.command("check")
@engine_cli_context()
@document_argument()
@click.option("--what", type=click.Choice(CHECKS), required=True, help="Property to check.")
@space_option()
@class_option()
@click.option("--at", multiple=True, help="Points to check at; repeat for several.")
@xi_option(multiple=True)
@product_options()
@click.option("--beta", default=0, show_default=True, help="Direction of the derivative.")
def check_cmd(
    cli_ctx, document, what, space_name, class_name, at, xi, product_of, classes, beta
):
    """Run a structural property check"""
    ws = _load(cli_ctx, document)
    _emit(
        cli_ctx,
        [
            lambda: run_check(
                ws,
                what,
                at=list(at) or None,
                space_name=space_name,
                class_name=class_name,
                xi=list(xi) or None,
                product_of=product_of,
                classes=classes,
                beta=beta,
            )
        ],
    )


@cli.command("oracle")
@engine_cli_context()
@document_argument()
@click.option(
    "--method",
    type=click.Choice([m.value for m in OracleMethod]),
    default=OracleMethod.TRIANGULATION.value,
    show_default=True,
)
@space_option()
@class_option()
@click.option("--at", help="Point of reduction.")
@xi_option()
@product_options()
@click.option("--step", default="1/1000", show_default=True, help="Grid step.")
@click.option("--exponents", help="Comma separated exponents for the closed form.")
def oracle_cmd(
    cli_ctx,
    document,
    method,
    space_name,
    class_name,
    at,
    xi,
    product_of,
    classes,
    step,
    exponents,
):
    """Compare an engine value with a brute-force oracle"""
    ws = _load(cli_ctx, document)
    _emit(
        cli_ctx,
        [
            lambda: run_oracle(
                ws,
                method,
                at=at,
                space_name=space_name,
                class_name=class_name,
                xi=xi,
                product_of=product_of,
                classes=classes,
                step=step,
                exponents=exponents,
            )
        ],
    )


@cli.command("run")
@engine_cli_context()
@document_argument()
def run_cmd(cli_ctx, document):
    """Run every query of a document"""
    ws = _load(cli_ctx, document)
    if not ws.document.queries:
        cli_ctx.logger.warning("The document has no queries.")

    runs = []
    for query in ws.document.queries:
        runner = RUNNERS[query.command]
        try:
            runs.append(_bind(runner, ws, _query_options(query.options)))
        except InputDocumentError as err:
            cli_ctx.abort(str(err), code=1)

    _emit(cli_ctx, runs)


__all__ = ["cli"]
