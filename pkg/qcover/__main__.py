import sys

from qcover.main import main

sys.exit(main())
