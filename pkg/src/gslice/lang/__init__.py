"""Surface language: syntax, parser and typechecker."""
from gslice.lang.parser import ParseError, parseProgram, parseTerm, parseType  # noqa: F401
from gslice.lang.syntax import *  # noqa: F401,F403
from gslice.lang.typecheck import TypeCheckError, TypedTerm, typecheck, typecheckProgram  # noqa: F401
