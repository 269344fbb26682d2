"""Command-line front end: subcommand pipelines, run reports and their rendering."""
