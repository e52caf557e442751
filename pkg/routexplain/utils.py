#!/usr/bin/python
# -- Content-Encoding: utf-8 --
"""
Provides utility methods used by the core implementation of routexplain.

Namely: logging methods, input stream helpers, weight arithmetic

:authors: routexplain contributors
:license: Apache License 2.0
:version: 0.1.0
:status: Alpha

..

    Copyright 2026 routexplain contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
"""

from __future__ import absolute_import

# Standard library
from typing import IO, Union  # noqa: F401
import gzip
import io
import logging
import os

from .constants import INFINITE, INFINITE_TOKEN

# ------------------------------------------------------------------------------

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------

# Setup the logger
_log = logging.getLogger("routexplain")


def log_debug(message, ident=0):
    """
    Logs a message at debug level

    :param message: Message to log
    :param ident: Number of indentation spaces
    """
    _log.debug("%s%s", " " * (ident * 2), message)


def log_error(message, ident=0):
    """
    Logs a message at error level

    :param message: Message to log
    :param ident: Number of indentation spaces
    """
    _log.error("%s%s", " " * (ident * 2), message)


# ------------------------------------------------------------------------------


def text_data_fd(original_fd):
    # type: (IO[bytes]) -> IO[str]
    """
    Wraps a binary input stream into an UTF-8 text stream.
    Automatically uncompresses GZipped data

    :param original_fd: Input file descriptor, in binary mode
    :return: A text stream over the (uncompressed) content
    :raise IOError: Error reading input file
    """
    start_idx = original_fd.tell()
    magic_header = bytearray(original_fd.read(2))
    original_fd.seek(start_idx, os.SEEK_SET)

    if bytes(magic_header) == b"\x1f\x8b":
        # Open the GZip file
        original_fd = gzip.GzipFile(fileobj=original_fd, mode="rb")  # type: ignore

    return io.TextIOWrapper(original_fd, encoding="utf-8", newline="")


# ------------------------------------------------------------------------------


def parse_weight(token):
    # type: (str) -> Union[int, object]
    """
    Parses a weight token: a nonnegative integer or ``inf``

    :param token: Text to parse
    :return: The integer value or INFINITE
    :raise ValueError: Invalid token
    """
    token = token.strip()
    if token == INFINITE_TOKEN:
        return INFINITE

    value = int(token)
    if value < 0:
        raise ValueError("Negative weight: {0}".format(token))
    return value


def format_weight(value):
    # type: (Union[int, object]) -> str
    """
    Formats a weight for text outputs
    """
    if value is INFINITE:
        return INFINITE_TOKEN
    return str(value)


def json_weight(value):
    """
    Converts a weight for JSON outputs (INFINITE as the ``inf`` string)
    """
    if value is INFINITE:
        return INFINITE_TOKEN
    return value


def from_json_weight(value):
    """
    Converts a JSON weight back (``inf`` string as INFINITE)
    """
    if value == INFINITE_TOKEN:
        return INFINITE
    return int(value)
