"""HTTP service exposing the library: pydantic schemas, handlers, FastAPI app."""
