"""Report, document and configuration schemas."""
