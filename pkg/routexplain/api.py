#!/usr/bin/env python3
"""
Definition of the explainer API

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

from .beans import (  # pylint:disable=W0611
    Explanation,
    ExplanationInstance,
    VerificationReport,
)
from .constants import ExplainMethod

# ------------------------------------------------------------------------------

# Module version
__version_info__ = (0, 1, 0)
__version__ = ".".join(str(x) for x in __version_info__)

# Documentation strings format
__docformat__ = "restructuredtext en"

# ------------------------------------------------------------------------------


class IExplainer(object):  # pylint:disable=R0205
    """
    API of the explanation methods compared by the harness
    """

    method = ExplainMethod.SVE

    def explain(self, inst):
        # type: (ExplanationInstance) -> Explanation
        """
        Computes a valid explanation of the path of the instance.

        :param inst: The explanation instance
        :return: The explanation
        :raise PreconditionError: No valid explanation exists
        """
        raise NotImplementedError

    def verify(self, inst, expl):  # pylint:disable=W0613,R0201
        # type: (ExplanationInstance, Explanation) -> Optional[VerificationReport]
        """
        Checks the last explanation computed by this explainer.

        Returns None if the explainer has nothing to check.

        :param inst: The explanation instance
        :param expl: An explanation returned by ``explain``
        :return: The verification report, or None
        """
        return None
