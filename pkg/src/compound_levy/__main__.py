import sys

from compound_levy.cli import main

sys.exit(main())
