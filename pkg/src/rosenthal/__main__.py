import sys

from rosenthal.cli import main

sys.exit(main())
