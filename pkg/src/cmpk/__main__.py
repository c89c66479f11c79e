import sys

from cmpk.cli import main

sys.exit(main())
