#!/usr/bin/env python3

# Copyright (c) 2026 nv-cqed contributors
#
# This program is free software: you can redistribute it and/or modify it under the
# terms of the GNU Affero General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE. See the GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License along
# with this program. If not, see <https://www.gnu.org/licenses/>.

import os
import sys
import traceback

from cqed import const
from cqed.cli.commands import Cmd
from cqed.core.config.config_manager import ConfigManager
from cqed.core.error import CQEDError, IntegrationError
from cqed.util.log import Log

def main(argv: list = None) -> int:
    argv = sys.argv if argv is None else argv
    try:
        ConfigManager.init("cqed", log_path=os.environ.get("CQED_LOG_PATH"),
                           level=os.environ.get("CQED_LOG_LEVEL", const.LOG_LEVEL))
        desc = "Cavity QED simulator for optically cooled NV spin ensembles"
        command = Cmd.get_command(desc, argv[1:])
        return command.process()
    except IntegrationError as err:
        sys.stderr.write(f"Integration failed: {err}\n")
        return const.EXIT_CONVERGENCE_FAILURE
    except CQEDError as err:
        sys.stderr.write(f"cqed: {err}\n")
        return err.rc
    except OSError as err:
        sys.stderr.write(f"cqed: {err}\n")
        return const.EXIT_IO_ERROR
    except Exception as err:
        Log.error("%s\n" % traceback.format_exc())
        sys.stderr.write(f"cqed failed. Error: {err}\n")
        return const.EXIT_FAILURE

if __name__ == '__main__':
    sys.exit(main(sys.argv))
