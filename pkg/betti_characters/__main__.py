import sys

from betti_characters.cli import main

sys.exit(main())
