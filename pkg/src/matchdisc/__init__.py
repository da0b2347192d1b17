"""Exact discrepancy thresholds for perfect matchings in edge-colored hypergraphs."""
