#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Test package for routexplain
"""
