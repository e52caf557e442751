#!/usr/bin/env python3
"""
Utility module to read the sectioned, tab-separated text formats

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

from typing import IO, Iterable, Iterator, List, Optional  # noqa: F401

from .exceptions import GraphFormatError
from .utils import parse_weight

# ------------------------------------------------------------------------------

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


class TsvRow(object):  # pylint:disable=R0205
    """
    A data row, with its position in the input
    """

    __slots__ = ("section", "line", "fields")

    def __init__(self, section, line, fields):
        # type: (Optional[str], int, List[str]) -> None
        self.section = section
        self.line = line
        self.fields = fields

    def __len__(self):
        return len(self.fields)

    def fail(self, message, column=None):
        # type: (str, Optional[int]) -> GraphFormatError
        """
        Prepares an error located on this row

        :param message: Description of the problem
        :param column: 0-based column index
        :return: The exception to raise
        """
        return GraphFormatError(
            message,
            line=self.line,
            column=None if column is None else column + 1,
            section=self.section,
        )

    def expect(self, *counts):
        # type: (int) -> None
        """
        Checks the number of fields of the row

        :param counts: Accepted numbers of fields
        :raise GraphFormatError: Unexpected number of fields
        """
        if len(self.fields) not in counts:
            raise self.fail(
                "Expected {0} fields, got {1}".format(
                    " or ".join(str(c) for c in counts), len(self.fields)
                ),
                column=min(len(self.fields), max(counts)),
            )

    def read_str(self, column):
        # type: (int) -> str
        """
        Reads a non-empty text field
        """
        value = self.fields[column].strip()
        if not value:
            raise self.fail("Empty field", column)
        return value

    def read_int(self, column, minimum=0):
        # type: (int, Optional[int]) -> int
        """
        Reads an integer field

        :param column: 0-based column index
        :param minimum: Smallest accepted value (None for no bound)
        :raise GraphFormatError: Not an integer or out of range
        """
        token = self.fields[column].strip()
        try:
            value = int(token)
        except ValueError:
            raise self.fail("Not an integer: {0!r}".format(token), column)

        if minimum is not None and value < minimum:
            raise self.fail(
                "Value {0} is lower than {1}".format(value, minimum), column
            )
        return value

    def read_float(self, column):
        # type: (int) -> float
        """
        Reads a decimal field (coordinates)
        """
        token = self.fields[column].strip()
        try:
            return float(token)
        except ValueError:
            raise self.fail("Not a number: {0!r}".format(token), column)

    def read_weight(self, column):
        """
        Reads a weight field: nonnegative integer or ``inf``
        """
        token = self.fields[column]
        try:
            return parse_weight(token)
        except ValueError:
            raise self.fail("Invalid weight: {0!r}".format(token), column)


class TsvSectionReader(object):  # pylint:disable=R0205
    """
    Reads the given text stream as a list of sections of tab-separated rows
    """

    def __init__(self, fd, sections, default_section=None):
        # type: (IO[str], Iterable[str], Optional[str]) -> None
        """
        :param fd: The input stream
        :param sections: Accepted section headers (e.g. ``#nodes``)
        :param default_section: Section of the rows read before any header;
                                rows are rejected there if None
        """
        self.__fd = fd
        self.__sections = frozenset(sections)
        self.__default = default_section

    @property
    def file_descriptor(self):
        # type: () -> IO[str]
        """
        The underlying file descriptor
        """
        return self.__fd

    def __iter__(self):
        # type: () -> Iterator[TsvRow]
        """
        Yields all data rows, with their section
        """
        section = self.__default
        for line_no, line in enumerate(self.__fd, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue

            if line.startswith("#"):
                header = line.split("\t", 1)[0].strip()
                if header not in self.__sections:
                    raise GraphFormatError(
                        "Unknown section {0!r}".format(header),
                        line=line_no,
                        column=1,
                    )
                section = header
                continue

            if section is None:
                raise GraphFormatError(
                    "Data row outside of any section", line=line_no, column=1
                )

            yield TsvRow(section, line_no, line.split("\t"))
