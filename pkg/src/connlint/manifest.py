"""Android manifest facts: declared permissions and activity intent actions."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from connlint.errors import ManifestParseError

ANDROID_NS = "http://schemas.android.com/apk/res/android"
_NAME_ATTR = f"{{{ANDROID_NS}}}name"

INTERNET = "android.permission.INTERNET"
ACCESS_NETWORK_STATE = "android.permission.ACCESS_NETWORK_STATE"
MANAGE_NETWORK_USAGE = "android.intent.action.MANAGE_NETWORK_USAGE"


@dataclass(frozen=True)
class ManifestModel:
    package_name: str = ""
    permissions: frozenset[str] = field(default_factory=frozenset)
    intent_actions: frozenset[str] = field(default_factory=frozenset)


def parse_manifest(xml_text: str | bytes) -> ManifestModel:
    """Parse the literal (unmerged) manifest of an app module.

    Only ``android:name`` attributes in the Android namespace are read.
    Intent-filter actions count only when the filter belongs to an
    ``<activity>``; services, receivers and aliases are ignored.
    """
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise ManifestParseError(f"malformed manifest XML: {exc}") from exc
    if root.tag != "manifest":
        raise ManifestParseError(f"expected <manifest> root element, found <{root.tag}>")

    permissions = {
        name
        for el in root.iter("uses-permission")
        if (name := el.get(_NAME_ATTR)) is not None
    }
    actions = {
        name
        for activity in root.iter("activity")
        for intent_filter in activity.iter("intent-filter")
        for action in intent_filter.iter("action")
        if (name := action.get(_NAME_ATTR)) is not None
    }
    return ManifestModel(
        package_name=root.get("package", ""),
        permissions=frozenset(permissions),
        intent_actions=frozenset(actions),
    )


def has_permission(m: ManifestModel, name: str) -> bool:
    return name in m.permissions


def has_intent_action(m: ManifestModel, action: str) -> bool:
    return action in m.intent_actions
