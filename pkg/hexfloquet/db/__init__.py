"""Static reference data: device coupling maps and published calibration tables."""
