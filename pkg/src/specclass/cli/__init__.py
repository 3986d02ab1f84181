"""Command-line front end: workspace language and command dispatch."""
