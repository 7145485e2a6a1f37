#!/usr/bin/env python3
from hybridmoments.app.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
