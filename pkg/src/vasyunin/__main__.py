import sys

from vasyunin.cli import main

sys.exit(main())
