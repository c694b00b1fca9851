"""Regenerate the collision tables from the CLI.

Run: python3 demos/04_collision_tables.py
"""
from ellflat.cli import main

main(["tables", "--cor46"])
print()
main(["tables", "--miranda3"])
