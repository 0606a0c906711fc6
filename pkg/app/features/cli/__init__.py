# CLI Feature Package
