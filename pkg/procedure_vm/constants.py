#    Copyright 2025 Genesis Corporation.
#
#    All Rights Reserved.
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.
import enum
import typing as tp

PKG_NAME = "procedure_vm"
DIST_NAME = "procedure-vm"
WORLDS_ENTRY_POINT_GROUP = "procedure_vm.worlds"

# Execution defaults
DEF_BUDGET = 100000
DEF_SEED = 0
DEF_TRIALS = 10
DEF_CANDIDATE_BUDGET = 1000
DEF_SIMULATION_DEPTH = 2
BUILTIN_PREFIX = "builtin:"

# Tape
BLANK = "_"
INITIAL_STATE = 0

# Quoting alphabet: digits, field separator, instruction separator,
# list separator, name character separator, section separator, terminator
QUOTE_ALPHABET = "0123456789|;,.:="
QUOTE_FIELD_SEP = "|"
QUOTE_INSTRUCTION_SEP = ";"
QUOTE_LIST_SEP = ","
QUOTE_CHAR_SEP = "."
QUOTE_SECTION_SEP = ":"
QUOTE_TERMINATOR = "="
ANONYMOUS_MACHINE = "anonymous"

# Action and reading ids with a fixed meaning
ACT_ROLL = "roll"
ACT_SAMPLE = "sample"
ACT_SET_VOLTAGE = "set_voltage_10"
READ_VOLTAGE = "voltage_is_10"
READ_BLUE_SAYS_YES = "blue_says_yes"
READ_H_SAYS_HALT = "h_says_halt"

# Thermometer rendering "DD.ddd"
THERMO_INTEGER_DIGITS = 2
THERMO_DECIMALS = 3
THERMO_DIGIT_NAMES = (
    "tens",
    "units",
    "tenths",
    "hundredths",
    "thousandths",
)

# Fixed strings printed by the diagonal constructions
NO_TEMPERATURE = "NOTEMP"
ERROR_RESULT = "ERR"
HALTING_NO_RESULT = "0"

# Answers of candidate deciders
VERIFIER_YES = "1"
VERIFIER_NO = "0"
HALTING_YES = "H"
HALTING_NO = "N"

# Types
TraceLevel = tp.Literal["none", "steps"]
OutputFormat = tp.Literal["human", "json"]


class RunStatus(str, enum.Enum):
    HALTED = "halted"
    BUDGET_EXHAUSTED = "budget_exhausted"
    EXECUTION_ERROR = "execution_error"


class Behavior(str, enum.Enum):
    MEASURED_TEMPERATURE = "measured_temperature"
    DID_NOT_MEASURE = "did_not_measure"
    NON_EFFECTIVE = "non_effective"
    HALTED = "halted"
    BUDGET_EXHAUSTED = "budget_exhausted"
    UNDETERMINED = "undetermined"


class Branch(str, enum.Enum):
    """Branch taken by a constructed machine after its decider reading."""

    YES = "yes"
    NO = "no"
    CANNOT_PERFORM = "cannot_perform"
    NOT_REACHED = "not_reached"
