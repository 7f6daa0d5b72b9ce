"""Command-line entry point: ``python run.py entropy theta.yml``."""

from app.main import main

if __name__ == "__main__":
    main()
