"""Plain-text instance files for the command line.

Files are line oriented with named sections; ``#`` starts a comment.

    field q            (rationals)  |  field p 5  |  field 5
    dim 3
    gen g1 = [[0,1,0],[0,0,0],[0,0,0]]
    let t  = g1 + g1           (optional helper bindings)
    x = [[1,0,0],[0,0,0],[0,0,0]]
    coeff a0 = g1              (coefficients in the order given)
    derivation inner           (or: derivation map  + one dmap line per generator)
    dmap g1 = [[...]]
    poly f = a0 + X*a1         (polynomial expressions; X needs a derivation)

Generator expressions may reference earlier bindings.  Polynomial lines are
evaluated last, once the coefficient ring and derivation exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import NotClosedError, OrenilError, ParseError
from .exprs import Evaluator, parse
from .linalg import Matrix
from .nilalg import MatrixAlgebra, closure
from .orepoly import (
    CoefficientRing,
    Derivation,
    OrePoly,
    make_inner_derivation,
)
from .scalars import Field, GF, QQ


class InstanceFileError(OrenilError):
    pass


@dataclass
class InstanceFile:
    field: Field
    dim: int
    gen_names: list = dc_field(default_factory=list)
    coeff_names: list = dc_field(default_factory=list)
    bindings: dict = dc_field(default_factory=dict)
    x: Matrix | None = None
    derivation_mode: str | None = None
    dmap_sources: dict = dc_field(default_factory=dict)
    poly_sources: list = dc_field(default_factory=list)  # (name, source text)

    @property
    def generators(self) -> list[Matrix]:
        return [self.bindings[n] for n in self.gen_names]

    @property
    def coefficients(self) -> list[Matrix]:
        return [self.bindings[n] for n in self.coeff_names]


def _parse_field(parts: list[str], lineno: int) -> Field:
    if not parts:
        raise ParseError("field line needs an argument", lineno, 1)
    tag = parts[0].lower()
    if tag in ("q", "qq"):
        return QQ
    if tag == "p":
        if len(parts) < 2 or not parts[1].isdigit():
            raise ParseError("expected a prime after 'field p'", lineno, 1)
        return GF(int(parts[1]))
    if tag.isdigit():
        return GF(int(tag))
    raise ParseError(f"unknown field {parts[0]!r}", lineno, 1)


def load_instance_file(text: str) -> InstanceFile:
    """Parse the sectioned format; expressions are evaluated as lines arrive."""
    field: Field | None = None
    dim: int | None = None
    doc: InstanceFile | None = None

    def need_doc(lineno: int) -> InstanceFile:
        if doc is None:
            raise ParseError("field and dim must come before other sections", lineno, 1)
        return doc

    def evaluate(source: str, lineno: int):
        d = need_doc(lineno)
        ev = Evaluator(d.field, d.bindings)
        try:
            return ev.evaluate(parse(source))
        except ParseError as exc:
            raise ParseError(str(exc), lineno, 1) from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "field":
            field = _parse_field(rest.split(), lineno)
        elif head == "dim":
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError("dim needs a positive integer", lineno, 1)
            dim = int(rest)
        elif head in ("gen", "let", "coeff", "dmap", "poly"):
            if field is None or dim is None:
                raise ParseError("field and dim must come first", lineno, 1)
            if doc is None:
                doc = InstanceFile(field, dim)
            name, eq, source = rest.partition("=")
            name = name.strip()
            source = source.strip()
            if not eq or not name.isidentifier() or not source:
                raise ParseError(f"expected '{head} NAME = EXPR'", lineno, 1)
            if head == "poly":
                doc.poly_sources.append((name, source))
            elif head == "dmap":
                doc.dmap_sources[name] = (source, lineno)
            else:
                value = evaluate(source, lineno)
                if head in ("gen", "coeff") and not (
                    isinstance(value, Matrix)
                    and value.is_square
                    and value.nrows == dim
                ):
                    raise ParseError(
                        f"{head} {name} must be a {dim}x{dim} matrix", lineno, 1
                    )
                doc.bindings[name] = value
                if head == "gen":
                    doc.gen_names.append(name)
                elif head == "coeff":
                    doc.coeff_names.append(name)
        elif head == "x":
            if not rest.startswith("="):
                raise ParseError("expected 'x = EXPR'", lineno, 1)
            source = rest[1:].strip()
            if field is None or dim is None:
                raise ParseError("field and dim must come first", lineno, 1)
            if doc is None:
                doc = InstanceFile(field, dim)
            value = evaluate(source, lineno)
            if not (isinstance(value, Matrix) and value.is_square and value.nrows == dim):
                raise ParseError(f"x must be a {dim}x{dim} matrix", lineno, 1)
            doc.x = value
            doc.bindings["x"] = value
        elif head == "derivation":
            d = need_doc(lineno)
            mode = rest.strip().lower()
            if mode not in ("inner", "map", "none"):
                raise ParseError("derivation must be 'inner', 'map' or 'none'", lineno, 1)
            d.derivation_mode = mode
        else:
            raise ParseError(f"unknown section {head!r}", lineno, 1)
    if doc is None:
        if field is None or dim is None:
            raise ParseError("file must declare field and dim", 1, 1)
        doc = InstanceFile(field, dim)
    return doc


def build_algebra(doc: InstanceFile) -> MatrixAlgebra:
    if not doc.gen_names:
        raise InstanceFileError("file declares no generators")
    return closure(doc.generators)


def build_ring_and_derivation(
    doc: InstanceFile, algebra: MatrixAlgebra
) -> tuple[CoefficientRing, Derivation]:
    """The coefficient ring on the closure basis plus the declared derivation."""
    ring = CoefficientRing.from_algebra(algebra)
    mode = doc.derivation_mode
    if mode is None:
        raise InstanceFileError("file declares no derivation")
    if mode == "none":
        from .orepoly import zero_derivation

        return ring, zero_derivation(ring)
    if mode == "inner":
        if doc.x is None:
            raise InstanceFileError("derivation inner needs an x section")
        return ring, make_inner_derivation(ring, doc.x)
    # explicit map: generator images extend only when the generators already
    # span a multiplicatively closed, independent basis
    by_data = {}
    for name in doc.gen_names:
        by_data[doc.bindings[name].data] = name
    images = []
    ev = Evaluator(doc.field, doc.bindings)
    for b in ring.basis:
        name = by_data.get(b.data)
        if name is None:
            raise InstanceFileError(
                "explicit derivation maps need generators that already span "
                "a multiplicatively closed basis; add the missing products "
                "as named generators"
            )
        if name not in doc.dmap_sources:
            raise InstanceFileError(f"missing dmap line for generator {name!r}")
        source, lineno = doc.dmap_sources[name]
        value = ev.evaluate(parse(source))
        if not (
            isinstance(value, Matrix)
            and value.is_square
            and value.nrows == doc.dim
        ):
            raise InstanceFileError(f"dmap {name} must evaluate to a matrix")
        images.append(value)
    return ring, Derivation(ring, images)


def build_polynomials(
    doc: InstanceFile, ring: CoefficientRing, derivation: Derivation
) -> dict[str, OrePoly]:
    """Evaluate the poly lines with full ring/derivation context."""
    ev = Evaluator(doc.field, doc.bindings, ring=ring, derivation=derivation)
    out: dict[str, OrePoly] = {}
    for name, source in doc.poly_sources:
        value = ev.evaluate(parse(source))
        if not isinstance(value, OrePoly):
            value = ev._to_poly(value)
        out[name] = value
        ev.bindings[name] = value
    return out


def build_instance(doc: InstanceFile):
    """An Instance (from harness) plus optional realization validation."""
    from .harness import Instance

    algebra = build_algebra(doc)
    if doc.x is None:
        raise InstanceFileError("file declares no x")
    if not doc.coeff_names:
        raise InstanceFileError("file declares no coefficients")
    inst = Instance(algebra, doc.x, tuple(doc.coefficients))
    if doc.derivation_mode == "inner":
        # realization requested: the commutator with x must preserve the span
        ring = CoefficientRing.from_algebra(algebra)
        try:
            make_inner_derivation(ring, doc.x)
        except NotClosedError as exc:
            raise InstanceFileError(
                f"x does not stabilize the coefficient algebra: {exc}"
            ) from exc
    return inst
