"""Built-in problem files (``*.ksym``) read by :mod:`ksymplectic.cli.catalog`."""
