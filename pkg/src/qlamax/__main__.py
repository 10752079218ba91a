import sys

from qlamax.cli import main

sys.exit(main())
