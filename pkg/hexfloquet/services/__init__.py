"""Service layer: one module per domain concern."""
