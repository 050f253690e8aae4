"""Music-metadata integration toolkit.

MARC ingestion, rule-driven conversion to an event-centric graph,
controlled-vocabulary alignment, instance matching, pivot-graph
construction, and an HTTP service with faceted search on top.
"""

__version__ = "0.1.0"
