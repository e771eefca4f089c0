import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from torus_reduction.config import EngineConfig
from torus_reduction.exceptions import InputDocumentError, InvalidClassError
from torus_reduction.model import (
    EquivariantClass,
    SpaceKind,
    SpaceModel,
    class_algebra,
    coordinate_class,
    generator_names,
    parse_restrictions,
    product_classes,
    product_space,
    symplectic_class,
    unit_class,
    validate_class,
    validate_space,
)
from torus_reduction.utils import (
    BUNDLED_FIXTURES,
    SCHEMA_VERSION,
    bundled_fixture,
    engine_version,
)

Command = Literal["pair", "volume", "pushforward", "check", "oracle"]
SYMPLECTIC_CLASS_NAME = "nu"


class SpaceEntry(BaseModel):
    """
    A space of an input document: either explicit fixed-point data or the product of
    spaces declared before it.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    kind: SpaceKind = SpaceKind.COMPACT
    points: Optional[List[Dict[str, Any]]] = None
    product: Optional[List[str]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "SpaceEntry":
        if (self.points is None) == (self.product is None):
            raise ValueError(f"Space '{self.name}' needs exactly one of 'points' or 'product'.")

        return self


class ClassEntry(BaseModel):
    """
    A class of an input document, given by its restrictions, by an expression in
    earlier classes of the same space, by one class per factor of a product space, or
    as the symplectic class.
    """

    model_config = ConfigDict(extra="forbid")

    name: str
    space: str
    restrictions: Optional[Dict[str, Any]] = None
    expression: Optional[str] = None
    product: Optional[List[str]] = None
    symplectic: bool = False

    @model_validator(mode="after")
    def _one_source(self) -> "ClassEntry":
        sources = [
            self.restrictions is not None,
            self.expression is not None,
            self.product is not None,
            self.symplectic,
        ]
        if sum(sources) != 1:
            raise ValueError(
                f"Class '{self.name}' needs exactly one of 'restrictions', 'expression', "
                "'product' or 'symplectic'."
            )

        return self


class QueryEntry(BaseModel):
    """
    One command of a document's ``queries`` list; every other key is an option of it.
    """

    model_config = ConfigDict(extra="allow")

    command: Command

    @property
    def options(self) -> Dict[str, Any]:
        return dict(self.model_extra or {})


class InputDocument(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    rank: int = Field(gt=0)
    spaces: List[SpaceEntry]
    classes: List[ClassEntry] = []
    queries: List[QueryEntry] = []
    config: EngineConfig = EngineConfig()

    @model_validator(mode="after")
    def _check_schema(self) -> "InputDocument":
        if self.schema_version != SCHEMA_VERSION:
            raise ValueError(
                f"Unsupported schema {self.schema_version}, expected {SCHEMA_VERSION}."
            )

        return self


class OutputDocument(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    engine: str = Field(default_factory=engine_version)
    xi: Optional[List[int]] = None
    results: List[Dict[str, Any]] = []

    def render(self) -> str:
        return json.dumps(self.model_dump(by_alias=True), indent=2, sort_keys=True)


def load_document(source: Union[str, Path]) -> InputDocument:
    """
    Read an input document from a path, or from the bundled fixture of that name.

    Raises:
        :class:`~torus_reduction.exceptions.InputDocumentError`: When the file is
          missing, is not JSON or does not match the schema.
    """

    path = Path(source)
    if not path.is_file():
        if str(source) not in BUNDLED_FIXTURES:
            raise InputDocumentError(
                f"No document '{source}'. Bundled documents: {', '.join(BUNDLED_FIXTURES)}."
            )

        path = bundled_fixture(str(source))

    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as err:
        raise InputDocumentError(f"'{path}' is not valid JSON: {err}") from err

    return parse_document(raw)


def parse_document(raw: Any) -> InputDocument:
    try:
        return InputDocument.model_validate(raw)
    except ValidationError as err:
        raise InputDocumentError(f"Invalid input document: {err}") from err


class Workspace:
    """
    The spaces and classes of an input document, validated and built in document order.
    """

    def __init__(self, document: InputDocument):
        self.document = document
        self.config = document.config
        self.spaces: Dict[str, SpaceModel] = {}
        self.factors: Dict[str, Tuple[str, ...]] = {}
        self.classes: Dict[Tuple[str, str], EquivariantClass] = {}
        for space_entry in document.spaces:
            self._add_space(space_entry)

        for class_entry in document.classes:
            self._add_class(class_entry)

    @classmethod
    def load(cls, source: Union[str, Path]) -> "Workspace":
        return cls(load_document(source))

    @property
    def rank(self) -> int:
        return self.document.rank

    def _add_space(self, entry: SpaceEntry):
        if entry.name in self.spaces:
            raise InputDocumentError(f"Space '{entry.name}' is declared twice.")

        if entry.product is not None:
            factors = [self.space(name) for name in entry.product]
            self.spaces[entry.name] = product_space(*factors, name=entry.name)
            self.factors[entry.name] = tuple(entry.product)
            return

        raw = {"name": entry.name, "kind": entry.kind.value, "points": entry.points}
        self.spaces[entry.name] = validate_space(raw, rank=self.rank)

    def _add_class(self, entry: ClassEntry):
        space = self.space(entry.space)
        if (space.name, entry.name) in self.classes:
            raise InputDocumentError(f"Class '{entry.name}' on '{space.name}' is declared twice.")

        if entry.restrictions is not None:
            restrictions = parse_restrictions(entry.restrictions, space, entry.name)
            cls = EquivariantClass(name=entry.name, space=space.name, restrictions=restrictions)

        elif entry.expression is not None:
            cls = class_algebra(self.classes_on(space.name), entry.expression, space, entry.name)

        elif entry.product is not None:
            cls = self.product_class(space.name, entry.product, name=entry.name)

        else:
            cls = symplectic_class(space, name=entry.name)

        self.classes[(space.name, entry.name)] = validate_class(space, cls)

    def space(self, name: str) -> SpaceModel:
        if name not in self.spaces:
            raise InputDocumentError(f"Unknown space '{name}'.")

        return self.spaces[name]

    def classes_on(self, space_name: str) -> Dict[str, EquivariantClass]:
        space = self.space(space_name)
        classes = {SYMPLECTIC_CLASS_NAME: symplectic_class(space)}
        for (owner, name), declared in self.classes.items():
            if owner == space_name:
                classes[name] = declared

        return classes

    def cls(self, space_name: str, class_name: str) -> EquivariantClass:
        """
        A declared class, or one of the built-in classes ``1``, ``u1 .. uk`` and ``nu``.
        """

        space = self.space(space_name)
        if (space_name, class_name) in self.classes:
            return self.classes[(space_name, class_name)]

        elif class_name == "1":
            return unit_class(space)

        elif class_name in generator_names(space.rank):
            return coordinate_class(space, generator_names(space.rank).index(class_name))

        elif class_name == SYMPLECTIC_CLASS_NAME:
            return symplectic_class(space)

        raise InputDocumentError(f"Unknown class '{class_name}' on space '{space_name}'.")

    def factor_pairs(
        self, space_names: Sequence[str], class_names: Sequence[str]
    ) -> List[Tuple[SpaceModel, EquivariantClass]]:
        if len(space_names) != len(class_names):
            raise InputDocumentError(
                f"{len(space_names)} factor spaces but {len(class_names)} factor classes."
            )

        return [(self.space(s), self.cls(s, c)) for s, c in zip(space_names, class_names)]

    def product_class(
        self, space_name: str, class_names: Sequence[str], name: Optional[str] = None
    ) -> EquivariantClass:
        """
        The product of one class per factor, placed on the declared product space.
        """

        if space_name not in self.factors:
            raise InvalidClassError(f"Space '{space_name}' is not declared as a product.")

        pairs = self.factor_pairs(self.factors[space_name], class_names)
        cls = product_classes(pairs)
        return cls.model_copy(update={"name": name or cls.name, "space": space_name})


__all__ = [
    "ClassEntry",
    "InputDocument",
    "OutputDocument",
    "QueryEntry",
    "SpaceEntry",
    "Workspace",
    "load_document",
    "parse_document",
]
