#!/usr/bin/env python3
"""
Exceptions raised by routexplain

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

from typing import Optional  # pylint:disable=W0611

# ------------------------------------------------------------------------------

__all__ = (
    "ExplainError",
    "GraphFormatError",
    "UnreachableError",
    "PreconditionError",
    "ComplementarityError",
    "DegeneracyError",
    "UnboundedError",
    "NegativeCycleError",
    "IterationLimitError",
    "CertificateError",
    "EmptyWindowError",
    "SamplingExhaustedError",
    "GuardError",
)

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


class ExplainError(Exception):
    """
    Base of all routexplain errors
    """


class GraphFormatError(ExplainError, ValueError):
    """
    Malformed input file
    """

    def __init__(self, message, line=None, column=None, section=None):
        # type: (str, Optional[int], Optional[int], Optional[str]) -> None
        """
        :param message: Description of the problem
        :param line: 1-based line number, if known
        :param column: 1-based column number, if known
        :param section: Name of the section being parsed
        """
        self.line = line
        self.column = column
        self.section = section

        where = []
        if section:
            where.append("section {0}".format(section))
        if line is not None:
            where.append("line {0}".format(line))
        if column is not None:
            where.append("column {0}".format(column))

        if where:
            message = "{0} ({1})".format(message, ", ".join(where))
        super(GraphFormatError, self).__init__(message)


class UnreachableError(ExplainError):
    """
    No finite-weight path between the requested vertices
    """

    def __init__(self, source, target):
        self.source = source
        self.target = target
        super(UnreachableError, self).__init__(
            "{0} is unreachable from {1}".format(target, source)
        )


class PreconditionError(ExplainError, ValueError):
    """
    The inputs do not satisfy the operation contract
    """


class ComplementarityError(ExplainError, ValueError):
    """
    Both slack variables of an arc are positive
    """

    def __init__(self, arc_id):
        self.arc_id = arc_id
        super(ComplementarityError, self).__init__(
            "Both a and b are positive on arc {0}".format(arc_id)
        )


class DegeneracyError(ExplainError, ValueError):
    """
    A residual flow moves both directions of the same arc
    """


class UnboundedError(ExplainError):
    """
    The flow formulation is unbounded: the explained path is not a shortest
    path under the upper weights
    """


class NegativeCycleError(ExplainError):
    """
    Potentials can't be computed on the residual graph
    """


class IterationLimitError(ExplainError):
    """
    The augmentation loop did not converge in time
    """

    def __init__(self, iterations, gap):
        self.iterations = iterations
        self.gap = gap
        super(IterationLimitError, self).__init__(
            "No convergence after {0} iterations (current gap: {1})".format(
                iterations, gap
            )
        )


class CertificateError(ExplainError):
    """
    A certificate failed its own checks: this is a bug
    """


class EmptyWindowError(ExplainError, ValueError):
    """
    The hop filter excludes every arc of the path
    """


class SamplingExhaustedError(ExplainError):
    """
    The rejection budget of the query sampler is spent
    """


class GuardError(ExplainError, ValueError):
    """
    An oracle size guard was exceeded
    """
