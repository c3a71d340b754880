#!/usr/bin/env python3
"""Regenerate the bundled data directory (src/atlas/fixtures/).

Emits a desk-scale enterprise ATT&CK extract, the curated defense map, and
the WhisperGate sample case in canonical form. Object ids are uuid5-derived
so reruns are byte-stable.
"""

from __future__ import annotations

import json
import sys
import uuid
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from atlas.cases import parse_case, serialize_case  # noqa: E402

OUT_DIR = ROOT / "src" / "atlas" / "fixtures"
NAMESPACE = uuid.uuid5(uuid.NAMESPACE_URL, "atlas-fixtures")


def stix_id(kind: str, key: str) -> str:
    return f"{kind}--{uuid.uuid5(NAMESPACE, f'{kind}/{key}')}"


# --- ATT&CK extract ---------------------------------------------------------

# id -> (name, [tactic shorthands], is_subtechnique, revoked)
TECHNIQUES = {
    "T1003": ("OS Credential Dumping", ["credential-access"]),
    "T1007": ("System Service Discovery", ["discovery"]),
    "T1014": ("Rootkit", ["defense-evasion"]),
    "T1016": ("System Network Configuration Discovery", ["discovery"]),
    "T1018": ("Remote System Discovery", ["discovery"]),
    "T1027": ("Obfuscated Files or Information", ["defense-evasion"]),
    "T1030": ("Data Transfer Size Limits", ["exfiltration"]),
    "T1036": ("Masquerading", ["defense-evasion"]),
    "T1040": ("Network Sniffing", ["credential-access", "discovery"]),
    "T1055": ("Process Injection", ["defense-evasion", "privilege-escalation"]),
    "T1057": ("Process Discovery", ["discovery"]),
    "T1059": ("Command and Scripting Interpreter", ["execution"]),
    "T1059.001": ("PowerShell", ["execution"]),
    "T1059.003": ("Windows Command Shell", ["execution"]),
    "T1066": ("Indicator Removal from Tools", ["defense-evasion"]),
    "T1068": ("Exploitation for Privilege Escalation", ["privilege-escalation"]),
    "T1071": ("Application Layer Protocol", ["command-and-control"]),
    "T1078": (
        "Valid Accounts",
        ["defense-evasion", "persistence", "privilege-escalation", "initial-access"],
    ),
    "T1083": ("File and Directory Discovery", ["discovery"]),
    "T1087": ("Account Discovery", ["discovery"]),
    "T1091": ("Replication Through Removable Media", ["initial-access", "lateral-movement"]),
    "T1092": ("Communication Through Removable Media", ["command-and-control"]),
    "T1098": ("Account Manipulation", ["persistence", "privilege-escalation"]),
    "T1102": ("Web Service", ["command-and-control"]),
    "T1105": ("Ingress Tool Transfer", ["command-and-control"]),
    "T1110": ("Brute Force", ["credential-access"]),
    "T1120": ("Peripheral Device Discovery", ["discovery"]),
    "T1133": ("External Remote Services", ["initial-access", "persistence"]),
    "T1140": ("Deobfuscate/Decode Files or Information", ["defense-evasion"]),
    "T1190": ("Exploit Public-Facing Application", ["initial-access"]),
    "T1199": ("Trusted Relationship", ["initial-access"]),
    "T1201": ("Password Policy Discovery", ["discovery"]),
    "T1203": ("Exploitation for Client Execution", ["execution"]),
    "T1210": ("Exploitation of Remote Services", ["lateral-movement"]),
    "T1211": ("Exploitation for Defense Evasion", ["defense-evasion"]),
    "T1221": ("Template Injection", ["defense-evasion"]),
    "T1485": ("Data Destruction", ["impact"]),
    "T1498": ("Network Denial of Service", ["impact"]),
    "T1528": ("Steal Application Access Token", ["credential-access"]),
    "T1542": ("Pre-OS Boot", ["defense-evasion", "persistence"]),
    "T1542.003": ("Bootkit", ["defense-evasion", "persistence"]),
    "T1548": ("Abuse Elevation Control Mechanism", ["privilege-escalation", "defense-evasion"]),
    "T1561": ("Disk Wipe", ["impact"]),
    "T1567": ("Exfiltration Over Web Service", ["exfiltration"]),
    "T1593": ("Search Open Websites/Domains", ["reconnaissance"]),
    "T1606": ("Forge Web Credentials", ["credential-access"]),
    "T1615": ("Group Policy Discovery", ["discovery"]),
}

REVOKED_TECHNIQUES = {"T1066"}

GROUPS = {
    "G0007": (
        "APT28",
        [
            "SNAKEMACKEREL",
            "Swallowtail",
            "Group 74",
            "Sednit",
            "Sofacy",
            "Pawn Storm",
            "Fancy Bear",
            "STRONTIUM",
            "Tsar Team",
            "Threat Group-4127",
        ],
        "APT28 is a threat group attributed to Russia's General Staff Main "
        "Intelligence Directorate (GRU) 85th Main Special Service Center, "
        "military unit 26165. Active since at least 2004.",
    ),
    "G0016": (
        "APT29",
        [
            "NobleBaron",
            "Dark Halo",
            "StellarParticle",
            "NOBELIUM",
            "UNC2452",
            "YTTRIUM",
            "The Dukes",
            "Cozy Bear",
            "CozyDuke",
        ],
        "APT29 is a threat group attributed to Russia's Foreign Intelligence "
        "Service (SVR). They have operated since at least 2008.",
    ),
    "G0010": (
        "Turla",
        [
            "Group 88",
            "Belugasturgeon",
            "Waterbug",
            "WhiteBear",
            "VENOMOUS BEAR",
            "Snake",
            "Krypton",
        ],
        "Turla is a Russian-based threat group that has infected victims in "
        "over 45 countries, spanning government, embassies, military, "
        "education, research and pharmaceutical companies since 2004.",
    ),
    "G0034": (
        "Sandworm Team",
        [
            "ELECTRUM",
            "Telebots",
            "IRON VIKING",
            "BlackEnergy (Group)",
            "Quedagh",
            "Voodoo Bear",
        ],
        "Sandworm Team is a destructive threat group attributed to Russia's "
        "GRU Unit 74455, known for campaigns against Ukrainian electrical "
        "companies.",
    ),
}

SOFTWARE = {
    "S0045": ("ADVSTORESHELL", "malware"),
    "S0351": ("Cannon", "malware"),
    "S0160": ("certutil", "tool"),
    "S0023": ("CHOPSTICK", "malware"),
    "S0137": ("CORESHELL", "malware"),
    "S0243": ("DealersChoice", "malware"),
    "S0134": ("Downdelph", "malware"),
    "S0502": ("Drovorub", "malware"),
    "S0193": ("Forfiles", "tool"),
    "S0410": ("Fysbis", "malware"),
    "S0335": ("Carbon", "malware"),
    "S0265": ("Kazuar", "malware"),
    "S0002": ("Mimikatz", "tool"),
    "S0091": ("Epic", "malware"),
    "S0552": ("AdFind", "tool"),
    "S0154": ("Cobalt Strike", "tool"),
    "S0046": ("CozyCar", "malware"),
}

GROUP_TECHNIQUES = {
    "G0007": [
        "T1190", "T1133", "T1091", "T1199", "T1078",
        "T1203",
        "T1068",
        "T1140", "T1211", "T1036", "T1027", "T1014", "T1221",
        "T1110", "T1040", "T1003", "T1528",
        "T1083", "T1120", "T1057",
        "T1210",
        "T1092", "T1105",
        "T1030", "T1567",
        "T1498",
    ],
    "G0016": ["T1548", "T1087", "T1098", "T1190", "T1203", "T1133", "T1606", "T1105"],
    "G0010": [
        "T1068", "T1083", "T1615", "T1105", "T1201",
        "T1055", "T1018", "T1016", "T1007", "T1102",
    ],
    "G0034": [],
}

GROUP_SOFTWARE = {
    "G0007": [
        "S0045", "S0351", "S0160", "S0023", "S0137",
        "S0243", "S0134", "S0502", "S0193", "S0410",
    ],
    "G0016": ["S0552", "S0154", "S0046", "S0002"],
    "G0010": ["S0335", "S0265", "S0002", "S0091", "S0160"],
    "G0034": [],
}

SOFTWARE_TECHNIQUES = {
    "S0351": ["T1071"],
    "S0502": ["T1105"],
    "S0265": ["T1105"],
}

TACTIC_NAMES = {
    "reconnaissance": "Reconnaissance",
    "resource-development": "Resource Development",
    "initial-access": "Initial Access",
    "execution": "Execution",
    "persistence": "Persistence",
    "privilege-escalation": "Privilege Escalation",
    "defense-evasion": "Defense Evasion",
    "credential-access": "Credential Access",
    "discovery": "Discovery",
    "lateral-movement": "Lateral Movement",
    "collection": "Collection",
    "command-and-control": "Command and Control",
    "exfiltration": "Exfiltration",
    "impact": "Impact",
}


def build_bundle() -> dict:
    objects = []

    identity = stix_id("identity", "curator")
    objects.append(
        {
            "type": "identity",
            "spec_version": "2.1",
            "id": identity,
            "name": "atlas fixture curator",
            "identity_class": "organization",
        }
    )

    # x-mitre-tactic objects are intentionally present: the parser must skip
    # and count unknown types.
    for shorthand, display in TACTIC_NAMES.items():
        objects.append(
            {
                "type": "x-mitre-tactic",
                "spec_version": "2.1",
                "id": stix_id("x-mitre-tactic", shorthand),
                "name": display,
                "x_mitre_shortname": shorthand,
            }
        )

    for tid, (name, tactics) in sorted(TECHNIQUES.items()):
        obj = {
            "type": "attack-pattern",
            "spec_version": "2.1",
            "id": stix_id("attack-pattern", tid),
            "name": name,
            "created_by_ref": identity,
            "external_references": [
                {
                    "source_name": "mitre-attack",
                    "external_id": tid,
                    "url": f"https://attack.mitre.org/techniques/{tid.replace('.', '/')}",
                }
            ],
            "kill_chain_phases": [
                {"kill_chain_name": "mitre-attack", "phase_name": t} for t in tactics
            ],
            "x_mitre_is_subtechnique": "." in tid,
        }
        if tid in REVOKED_TECHNIQUES:
            obj["revoked"] = True
        objects.append(obj)

    for gid, (name, aliases, description) in sorted(GROUPS.items()):
        objects.append(
            {
                "type": "intrusion-set",
                "spec_version": "2.1",
                "id": stix_id("intrusion-set", gid),
                "name": name,
                "description": description,
                "aliases": [name, *aliases],
                "created_by_ref": identity,
                "external_references": [
                    {"source_name": "mitre-attack", "external_id": gid}
                ],
            }
        )

    for sid, (name, kind) in sorted(SOFTWARE.items()):
        objects.append(
            {
                "type": kind,
                "spec_version": "2.1",
                "id": stix_id(kind, sid),
                "name": name,
                "created_by_ref": identity,
                "external_references": [
                    {"source_name": "mitre-attack", "external_id": sid}
                ],
                **({"is_family": True} if kind == "malware" else {}),
            }
        )

    def relationship(kind, source, target):
        objects.append(
            {
                "type": "relationship",
                "spec_version": "2.1",
                "id": stix_id("relationship", f"{kind}/{source}/{target}"),
                "relationship_type": kind,
                "source_ref": source,
                "target_ref": target,
            }
        )

    for gid, tids in sorted(GROUP_TECHNIQUES.items()):
        for tid in tids:
            relationship("uses", stix_id("intrusion-set", gid), stix_id("attack-pattern", tid))
    for gid, sids in sorted(GROUP_SOFTWARE.items()):
        for sid in sids:
            kind = SOFTWARE[sid][1]
            relationship("uses", stix_id("intrusion-set", gid), stix_id(kind, sid))
    for sid, tids in sorted(SOFTWARE_TECHNIQUES.items()):
        for tid in tids:
            kind = SOFTWARE[sid][1]
            relationship("uses", stix_id(kind, sid), stix_id("attack-pattern", tid))
    for sub in sorted(t for t in TECHNIQUES if "." in t):
        parent = sub.split(".", 1)[0]
        relationship(
            "subtechnique-of", stix_id("attack-pattern", sub), stix_id("attack-pattern", parent)
        )
    relationship("revoked-by", stix_id("attack-pattern", "T1066"), stix_id("attack-pattern", "T1027"))

    return {"type": "bundle", "id": stix_id("bundle", "attack-extract"), "objects": objects}


# --- defense map -------------------------------------------------------------

DEFENSIVE_TECHNIQUES = [
    ("D3-AL", "Audit log", "detect",
     "Review of system and application audit records for signs of tampering or destruction."),
    ("D3-BA", "Bootloader Authentication", "harden",
     "Cryptographically authenticating the boot chain so an altered boot record will not load."),
    ("D3-EAL", "Executable Allowlisting", "isolate",
     "Using a allowlist to limit the executables that can run on a host."),
    ("D3-FA", "File Analysis", "detect",
     "Analyzing files delivered to or created on a host for malicious content."),
    ("D3-HIDS", "HIDS", "detect",
     "Host intrusion detection: monitoring process, file and configuration activity on a host."),
    ("D3-HP", "Honeypot", "deceive",
     "A decoy environment or object deployed to attract and expose adversary activity."),
    ("D3-RTSD", "Remote Terminal Session Detection", "detect",
     "Detection of an unauthorized remote live terminal console session by examining network "
     "traffic to a network host."),
    ("D3-WA", "Web analytics", "detect",
     "Analysis of web server logs and site telemetry to spot reconnaissance visits and scraping."),
]

ARTIFACTS = [
    "Decoy Object",
    "Event Log",
    "Executable Binary",
    "File Content",
    "Master Boot Record",
    "Network Traffic",
    "Process",
    "Web Resource Access",
]

DEFENSE_MAPPINGS = [
    ("T1027", "File Content", "D3-HIDS"),
    ("T1059", "Process", "D3-HIDS"),
    ("T1105", "Network Traffic", "D3-RTSD"),
    ("T1133", "Network Traffic", "D3-RTSD"),
    ("T1190", "File Content", "D3-FA"),
    ("T1485", "Decoy Object", "D3-HP"),
    ("T1542", "Executable Binary", "D3-EAL"),
    ("T1542", "Master Boot Record", "D3-BA"),
    ("T1561", "Event Log", "D3-AL"),
    ("T1593", "Web Resource Access", "D3-WA"),
]


def build_defense_map() -> dict:
    return {
        "defensive_techniques": [
            {"id": i, "name": n, "tactic": t, "description": d}
            for i, n, t, d in DEFENSIVE_TECHNIQUES
        ],
        "artifacts": [{"name": a} for a in ARTIFACTS],
        "mappings": [
            {"offensive": o, "artifact": a, "defensive": d} for o, a, d in DEFENSE_MAPPINGS
        ],
    }


# --- WhisperGate case --------------------------------------------------------

WHISPERGATE = {
    "id": "whispergate",
    "title": "WhisperGate destructive campaign against Ukrainian organizations (January 2022)",
    "adversary_ref": "DEV-0586",
    "notes": (
        "Curated dossier for the January 2022 WhisperGate wiper campaign (tracked by "
        "Microsoft as DEV-0586; see CISA alert AA22-057A). Dossier prose is kept in the "
        "original Spanish. Transcription decisions: the diamond arcs are fixed as A:1->2 "
        "(OR), B:2->4 (OR), C:3->4 (OR), D:4->5 (AND), E:5->6 (AND), F:6->7 (AND), with "
        "event 3 as an alternative entry point that has no incoming arc; event vertex "
        "values are reconstructions, while event descriptions, arc attributes and "
        "'provides' texts are transcribed from the dossier. Event 7 deliberately merges "
        "the MBR overwrite and the file-renaming action into one event. Discovery is "
        "overridden to the Installation phase because the directory sweep happens during "
        "implantation."
    ),
    "observations": [
        {
            "tactic": "execution",
            "technique": "T1059.003",
            "description": (
                "La primera etapa del malware WhisperGate utiliza un comando de Windows "
                "Command Shell para ejecutar el malware."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "execution",
            "technique": "T1059.001",
            "description": (
                "Utiliza PowerShell para conectar con su servidor de Mando y Control (C2) "
                "y descargar cargas útiles adicionales."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "persistence",
            "technique": "T1542.003",
            "description": (
                "WhisperGate modifica el Registro Maestro de Arranque (MBR). Dado que el MBR "
                "alterado es la primera sección del disco después de completar la "
                "inicialización del hardware por la BIOS, el malware evade la defensa."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "defense-evasion",
            "technique": "T1027",
            "description": "WhisperGate entrega comandos PowerShell en Base64.",
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "discovery",
            "technique": "T1083",
            "description": (
                "WhisperGate busca extensiones de archivo específicas en determinados "
                "directorios para alterar su contenido."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "command-and-control",
            "technique": "T1105",
            "description": (
                "WhisperGate descarga el archivo corruptor payload desde el canal de Discord "
                "alojado por el grupo APT. El enlace de descarga del ejecutable malicioso "
                "está codificado en el stage2.exe."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "impact",
            "technique": "T1561",
            "description": (
                "WhisperGate sobrescribe el Master Boot Record. Cuando se sobrescribe el MBR, "
                "el sistema infectado no arranca tras el apagado."
            ),
            "source": "CISA alert AA22-057A",
        },
        {
            "tactic": "impact",
            "technique": "T1485",
            "description": (
                "WhisperGate sobrescribe los archivos y afecta negativamente a su integridad. "
                "Además, el malware cambia el nombre de los archivos para aumentar su impacto."
            ),
            "source": "CISA alert AA22-057A",
        },
    ],
    "phase_overrides": {"discovery": "installation"},
    "phase_prose": {
        "reconnaissance": (
            "Aunque no ha sido reportado oficialmente, dada la gran cantidad de eventos a "
            "distintas organizaciones, se sugiere un ataque oportunista frente a uno dirigido."
        ),
        "weaponization": (
            "Una vez completado el reconocimiento, el adversario prepara un archivo "
            "ejecutable malicioso codificado como stage1.exe o stage2.exe."
        ),
        "delivery": (
            "Se presume que se utilizaron contraseñas robadas en campañas anteriores para "
            "tener acceso a los sistemas. Al mismo tiempo, no se descartan otros dos posibles "
            "vectores de ataque, como la explotación de las vulnerabilidades OctoberCMS y Log4j."
        ),
        "exploitation": (
            "WhisperGate utiliza un comando de Windows Command Shell para ejecutar el malware "
            "y se ejecuta a través de Impacket, una capacidad disponible públicamente utilizada "
            "a menudo por los actores de amenazas para el movimiento lateral y la ejecución."
        ),
        "installation": (
            "WhisperGate modifica el Registro Maestro de Arranque (MBR). Dado que el MBR "
            "alterado es la primera sección del disco después de completar la inicialización "
            "del hardware por la BIOS, el malware evade la defensa. El malware también busca "
            "extensiones de archivo específicas en determinados directorios para alterar su "
            "contenido."
        ),
        "command-and-control": (
            "La carga útil es descargada a través de un archivo DLL malicioso alojado en un "
            "servidor Discord, que suelta y ejecuta otra carga útil con el objetivo de "
            "destruir los archivos de las máquinas infectadas."
        ),
        "actions-on-objectives": (
            "El ejecutable de malware borra el registro maestro de arranque (MBR) y lo "
            "reemplaza por el código responsable de mostrar la nota de rescate, pero "
            "WhisperGate no pretende ser un intento de rescate real, ya que el MBR está "
            "completamente sobrescrito y no tiene opciones de recuperación. El malware "
            "también intenta destruir la partición C: sobrescribiéndola con datos fijos. "
            "Después de sobrescribir el contenido, el malware cambia el nombre de cada "
            "archivo con una extensión de cuatro bytes aparentemente aleatoria."
        ),
    },
    "thread": {
        "events": [
            {
                "id": 1,
                "phase": "reconnaissance",
                "status": "hypothesis",
                "confidence": "low",
                "adversary": "DEV-0586",
                "capability": "Inteligencia de fuente abierta (OSINT)",
                "infrastructure": "Fuentes públicas en Internet",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El Adversario utiliza la inteligencia de fuente abierta para "
                    "seleccionar al adversario."
                ),
                "techniques": ["T1593"],
            },
            {
                "id": 2,
                "phase": "delivery",
                "status": "hypothesis",
                "confidence": "low",
                "adversary": "DEV-0586",
                "capability": "Contraseñas robadas en campañas anteriores",
                "infrastructure": "Accesos remotos expuestos de la víctima",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El adversario utiliza contraseña robadas en campañas anteriores para "
                    "obtener acceso a los sistemas."
                ),
                "techniques": ["T1078"],
            },
            {
                "id": 3,
                "phase": "delivery",
                "status": "hypothesis",
                "confidence": "low",
                "adversary": "DEV-0586",
                "capability": "Exploits para OctoberCMS y Log4j",
                "infrastructure": "Servidores web vulnerables de la víctima",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El adversario explota las vulnerabilidades OctoberCMS y Log4j para "
                    "obtener acceso a los sistemas."
                ),
                "techniques": ["T1190"],
            },
            {
                "id": 4,
                "phase": "exploitation",
                "status": "real",
                "confidence": "high",
                "adversary": "DEV-0586",
                "capability": "Windows Command Shell (stage1.exe)",
                "infrastructure": "Equipos comprometidos de la víctima",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El adversario utiliza Windows Command Shell para ejecutar el malware"
                ),
                "techniques": ["T1059.003"],
            },
            {
                "id": 5,
                "phase": "command-and-control",
                "status": "real",
                "confidence": "high",
                "adversary": "DEV-0586",
                "capability": "Archivo DLL malicioso",
                "infrastructure": "Servidor Discord",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El malware descarga una carga útil a través de un archivo DLL "
                    "malicioso alojado en un servidor Discord."
                ),
                "techniques": ["T1105"],
            },
            {
                "id": 6,
                "phase": "command-and-control",
                "status": "real",
                "confidence": "high",
                "adversary": "DEV-0586",
                "capability": "Segunda carga útil destructiva",
                "infrastructure": "Equipos comprometidos de la víctima",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "Se descarga una segunda carga útil con el objetivo de destruir los "
                    "archivos de las máquinas infectadas."
                ),
                "techniques": ["T1105"],
            },
            {
                "id": 7,
                "phase": "actions-on-objectives",
                "status": "real",
                "confidence": "high",
                "adversary": "DEV-0586",
                "capability": "Sobrescritura del MBR y corrupción de archivos",
                "infrastructure": "Equipos comprometidos de la víctima",
                "victim": "Organizaciones ucranianas",
                "description": (
                    "El malware borra el registro maestro de arranque (MBR) y lo reemplaza "
                    "por el código responsable de mostrar la nota de rescate. También el "
                    "malware cambia el nombre de cada archivo con una extensión de cuatro "
                    "bytes aparentemente aleatoria."
                ),
                "techniques": ["T1485", "T1561"],
            },
        ],
        "arcs": [
            {
                "label": "A", "from": 1, "to": 2, "combinator": "OR",
                "status": "hypothesis", "confidence": "low",
                "provides": "Proporciona información sobre víctima",
            },
            {
                "label": "B", "from": 2, "to": 4, "combinator": "OR",
                "status": "hypothesis", "confidence": "low",
                "provides": "Proporciona acceso a la red de la víctima",
            },
            {
                "label": "C", "from": 3, "to": 4, "combinator": "OR",
                "status": "hypothesis", "confidence": "low",
                "provides": "Proporciona acceso a la red de la víctima",
            },
            {
                "label": "D", "from": 4, "to": 5, "combinator": "AND",
                "status": "real", "confidence": "high",
                "provides": "Proporciona la ejecución del Malware",
            },
            {
                "label": "E", "from": 5, "to": 6, "combinator": "AND",
                "status": "real", "confidence": "high",
                "provides": "Proporciona el establecimiento de la conexión remota.",
            },
            {
                "label": "F", "from": 6, "to": 7, "combinator": "AND",
                "status": "real", "confidence": "high",
                "provides": "Proporciona la carga útil del malware",
            },
        ],
    },
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    bundle = build_bundle()
    (OUT_DIR / "attack-extract.json").write_text(
        json.dumps(bundle, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    (OUT_DIR / "defense-map.json").write_text(
        json.dumps(build_defense_map(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )

    # round-trip through the parser so the file lands in canonical form
    case = parse_case(json.dumps(WHISPERGATE))
    (OUT_DIR / "whispergate.case.json").write_text(serialize_case(case), encoding="utf-8")

    for name in ("attack-extract.json", "defense-map.json", "whispergate.case.json"):
        print(f"wrote {OUT_DIR / name}")


if __name__ == "__main__":
    main()
