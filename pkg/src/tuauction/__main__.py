import sys

from tuauction.cli import main

sys.exit(main())
