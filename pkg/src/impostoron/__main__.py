"""Allow `python3 -m impostoron` as an alternative to the console script."""

from .cli import main

main()
