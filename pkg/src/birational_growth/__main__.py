#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Entry point for running birational_growth as a module.
Usage: python -m birational_growth <command> --map map.json [options]
"""
import sys

from ._terminal import command_line_interface

if __name__ == '__main__':
    sys.exit(command_line_interface())
