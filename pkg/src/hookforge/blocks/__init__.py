"""Visual block language: catalog, program model, interchange, validation."""

from .model import Block, BlockProgram, FieldValue, Issue, ValidationReport, new_block
from .parser import (
    DuplicateIdError,
    MalformedDocumentError,
    MissingEntryError,
    MultipleEntriesError,
    TypeMismatchError,
    UnknownBlockKindError,
    PARSE_ERRORS,
    parse_workspace,
    serialize_workspace,
)
from .validate import validate

# Must stay last: binding the catalog() function at package level shadows the
# .catalog submodule, and the sibling imports above need the module.
from .catalog import BlockCatalogEntry, catalog, catalog_document, CATALOG_VERSION

__all__ = [
    "Block",
    "BlockCatalogEntry",
    "BlockProgram",
    "CATALOG_VERSION",
    "DuplicateIdError",
    "FieldValue",
    "Issue",
    "MalformedDocumentError",
    "MissingEntryError",
    "MultipleEntriesError",
    "PARSE_ERRORS",
    "TypeMismatchError",
    "UnknownBlockKindError",
    "ValidationReport",
    "catalog",
    "catalog_document",
    "new_block",
    "parse_workspace",
    "serialize_workspace",
    "validate",
]
