"""The closed set of 24 PyPI Topic classifiers used as functional categories.

Topics carry a natural-language description (and, where the guidelines
provide them, advisory subcategories) to help assessors decide.  A coarse
two-class partition marks the topics whose typical use implies high
exposure to the Internet; the partition is configurable, with the
security-oriented default shipped here.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import UnknownTopic


class NetworkClass(Enum):
    """Coarse classification of a topic by Internet exposure."""

    REMOTE_NETWORK = "Remote network"
    LOCAL = "Local"


@dataclass(frozen=True)
class Topic:
    """One of the 24 canonical functional categories."""

    name: str
    description: str
    subcategories: tuple[str, ...] = ()

    def __str__(self) -> str:
        return self.name


# Canonical table, in the order the category guidelines list them.
# Names are exact, including slash and space forms; matching is
# case- and punctuation-sensitive.
_TOPIC_ROWS: tuple[tuple[str, str, tuple[str, ...]], ...] = (
    (
        "Adaptive Technologies",
        "Software used as proxy to interact with other software, e.g. to "
        "provide better compatibility, or support legacy versions, or add "
        "more services to the standard functionality.",
        (),
    ),
    (
        "Artistic Software",
        "Code used by digital artists to work, such as illustrators or "
        "fonts designers. Do not confuse with Multimedia.",
        (),
    ),
    (
        "Database",
        "Libraries whose main purpose is the creation/manipulation/"
        "interaction with database systems, including client and server ends.",
        (),
    ),
    (
        "Communications",
        "Code used to implement/deploy systems used for communications "
        "among humans, such as chat, E-mail, conferencing, IP-telephone, etc.",
        (),
    ),
    (
        "Desktop Environment",
        "Similar to System but specifically for the graphical desktop "
        "environment, e.g. windows manager, system graphical \"themes\", "
        "screensavers, etc. (see e.g. the Gnome and KDE projects).",
        (),
    ),
    (
        "Documentation",
        "Libraries used to generate or process source code documentation, "
        "such as Doxygen (C/C++), JavaDoc, Python docstrings, etc.",
        (),
    ),
    (
        "Education",
        "Libraries used for educational purposes, such as the \"Snap!\" "
        "visual programming language.",
        (),
    ),
    (
        "Games/Entertainment",
        "Software whose main purpose is to contribute to game development, "
        "such as a game engine (see e.g. the Ogre and Unreal engines), a "
        "games platform (Steam, GOG), etc.",
        (),
    ),
    (
        "Home Automation",
        "Code intended for domotics, i.e. automation of home/buildings "
        "appliances, including lighting and sound control, heaters, "
        "ventilation, door locking, etc.",
        (),
    ),
    (
        "Internet",
        "Software used mainly for remote (aka web) interaction, including "
        "client-server protocols, remote filesystems, website development, "
        "Internet routing, distributed workflow management, etc.",
        (),
    ),
    (
        "Multimedia",
        "Libraries used for graphics, video, or sound reproduction and "
        "manipulation, e.g. multimedia players, OBS studio, VLC, Inkscape, "
        "alsamixer, OpenAL, etc.",
        (),
    ),
    (
        "Office/Business",
        "Libraries used to deploy typical office programs such as word and "
        "spreadsheets processors, financial calculators, calendars, etc. "
        "Think of Microsoft Office and Outlook.",
        ("Financial", "Groupware", "News/Diary", "Scheduling", "Office Suites"),
    ),
    (
        "Other/Nonlisted Topic",
        "If the library can't even be categorised as Utilities because of "
        "its very niche use, it falls into this bucket. E.g. a one-use "
        "script (that was uploaded as a Maven artifact).",
        (),
    ),
    (
        "Printing",
        "Libraries for communication to printers. Consider e.g. the CUPs "
        "functionality in Linux systems.",
        (),
    ),
    (
        "Religion",
        "For the explicit use of religious purposes.",
        (),
    ),
    (
        "Scientific/Engineering",
        "Mostly related with academic research, i.e. software used in "
        "bleeding edge fields or technologies, such as AI development, "
        "physics simulators, theorem provers, medical science, etc.",
        (),
    ),
    (
        "Security",
        "Code used to implement/deploy security measures, e.g. user "
        "authentication, data encryption, secure communication channels, etc.",
        (),
    ),
    (
        "Sociology",
        "Similar to Scientific/Engineering but specifically used for social "
        "sciences and in particular sociology. Does not include statistics: "
        "that should go in Scientific/Engineering.",
        ("Genealogy", "History"),
    ),
    (
        "Software Development",
        "Software for the development of more software. Think of IDEs, "
        "version control, bug tracking, compilers, QA, testing, etc. "
        "Documentation not included: it has its own category.",
        (),
    ),
    (
        "System",
        "Anything used for typical operations in your own local system, "
        "e.g. file manipulation, resources monitoring, power management "
        "and boot, system shell, software package management, etc.",
        (),
    ),
    (
        "Terminals",
        "Libraries for deployment of terminals, not to confuse with "
        "\"shells\" which fall under System: terminals are the interface "
        "that lets you talk to the shell.",
        (),
    ),
    (
        "Text Editors",
        "Libraries used for basic text editing, such as Emacs, Vim, "
        "notepad, sublime, etc. Office-specific word processors (like "
        "Microsoft Word) don't fall here, but go to Office/Business instead.",
        (),
    ),
    (
        "Text Processing",
        "Software for processing (not input) generic text, e.g. regular "
        "expressions, filtering, markup. Examples are XML-HTML converters, "
        "regex filters, JSON serialisers, etc.",
        (),
    ),
    (
        "Utilities",
        "Category for \"miscelanea\", i.e. anything you could not fit "
        "properly in any other category.",
        (),
    ),
)

TOPICS: tuple[Topic, ...] = tuple(
    Topic(name, description, subs) for name, description, subs in _TOPIC_ROWS
)

_BY_NAME: Mapping[str, Topic] = {t.name: t for t in TOPICS}

# Topics whose typical use implies high Internet exposure; the other 18
# fall in the Local class.
REMOTE_NETWORK_TOPICS: frozenset[str] = frozenset(
    {"System", "Database", "Communications", "Security", "Internet", "Utilities"}
)


@dataclass(frozen=True)
class ClassPartition:
    """Total mapping of every topic to one of the two network classes."""

    remote_names: frozenset[str] = field(default=REMOTE_NETWORK_TOPICS)

    def __post_init__(self) -> None:
        unknown = self.remote_names - set(_BY_NAME)
        if unknown:
            raise UnknownTopic(f"unknown topic(s) in partition: {sorted(unknown)}")

    def class_of(self, topic: Topic | str) -> NetworkClass:
        name = topic.name if isinstance(topic, Topic) else topic
        if name not in _BY_NAME:
            raise UnknownTopic(name)
        if name in self.remote_names:
            return NetworkClass.REMOTE_NETWORK
        return NetworkClass.LOCAL

    def mapping(self) -> dict[Topic, NetworkClass]:
        return {t: self.class_of(t) for t in TOPICS}


DEFAULT_PARTITION = ClassPartition()


def list_topics() -> list[Topic]:
    """All 24 topics in their stable canonical order."""
    return list(TOPICS)


def parse_topic(name: str) -> Topic:
    """Resolve an exactly matching canonical name.

    Surrounding whitespace is tolerated (import files), but matching is
    otherwise exact; raises :class:`UnknownTopic` for anything else,
    which usually signals a corrupt import file.
    """
    topic = _BY_NAME.get(name.strip())
    if topic is None:
        raise UnknownTopic(f"not a canonical topic name: {name!r}")
    return topic


def class_of(topic: Topic | str, partition: ClassPartition = DEFAULT_PARTITION) -> NetworkClass:
    """Network class of a topic under the given (default: shipped) partition."""
    return partition.class_of(topic)


def export_csv(partition: ClassPartition = DEFAULT_PARTITION) -> str:
    """Taxonomy as UTF-8 CSV: name, class, description, subcategories."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "class", "description", "subcategories"])
    for topic in TOPICS:
        writer.writerow(
            [
                topic.name,
                partition.class_of(topic).value,
                topic.description,
                "; ".join(topic.subcategories),
            ]
        )
    return buf.getvalue()


def topic_names() -> list[str]:
    return [t.name for t in TOPICS]


def is_topic(name: str) -> bool:
    return name in _BY_NAME


def _check_table(rows: Iterable[tuple[str, str, tuple[str, ...]]] = _TOPIC_ROWS) -> None:
    names = [r[0] for r in rows]
    assert len(names) == 24 and len(set(names)) == 24


_check_table()
