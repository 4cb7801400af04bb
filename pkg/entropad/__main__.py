# Redirect top-level entrypoint to dedicated main module.
# This file supports the usage pattern of: `python -m entropad`

from entropad.main import main

raise SystemExit(main())
