"""HTTP JSON API over the toolkit: jobs, faceted search, entity pages
and mapping validation."""

from cantor.service.app import create_app

__all__ = ["create_app"]
