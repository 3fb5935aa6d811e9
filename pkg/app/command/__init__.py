"""Subcommands of the `cpc` command line."""
