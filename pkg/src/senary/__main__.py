import sys

from senary.cli import main

sys.exit(main())
