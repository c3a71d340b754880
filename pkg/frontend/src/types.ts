/**
 * Payload shapes of the atlas HTTP service, mirrored 1:1.
 * The workbench never derives these values itself; the service is the single
 * source of truth for profiles, phases, validation and the CoA matrix.
 */

export interface GroupRef {
  id: string;
  name: string;
}

export interface ProfileTechnique {
  id: string;
  name: string;
}

export interface ProfileTtpRow {
  tactic: string;
  tactic_name: string;
  techniques: ProfileTechnique[];
}

export interface SoftwareRef {
  id: string;
  name: string;
  kind: string;
}

export interface Profile {
  group: GroupRef;
  description: string;
  aliases: string[];
  ttp: ProfileTtpRow[];
  software: SoftwareRef[];
}

export type EventStatus = 'hypothesis' | 'real';
export type Confidence = 'low' | 'medium' | 'high';
export type Combinator = 'AND' | 'OR';

export interface CaseEvent {
  id: number;
  phase: string;
  adversary: string;
  capability: string;
  infrastructure: string;
  victim: string;
  status: EventStatus;
  confidence: Confidence;
  description: string;
  techniques: string[];
}

export interface CaseArc {
  label: string;
  from: number;
  to: number;
  combinator: Combinator;
  status: EventStatus;
  confidence: Confidence;
  provides: string;
}

export interface CaseDoc {
  id: string;
  title: string;
  adversary_ref: string;
  notes: string;
  observations: {
    tactic: string;
    technique: string;
    description: string;
    source: string;
  }[];
  phase_overrides: Record<string, string>;
  phase_prose: Record<string, string>;
  thread: {
    events: CaseEvent[];
    arcs: CaseArc[];
  };
}

export interface CoaEntry {
  name: string;
  provenance: string[];
}

export interface CoaCell {
  phase: string;
  action: string;
  entries: CoaEntry[];
}

export interface CoaMatrix {
  phases: string[];
  actions: string[];
  cells: CoaCell[];
}

export interface NarrativeRow {
  phase: string;
  phase_name: string;
  prose: string;
  techniques: string[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  path: string;
}

/** Enterprise matrix columns in canonical order (presentation constant). */
export const TACTIC_COLUMNS: { id: string; name: string }[] = [
  { id: 'reconnaissance', name: 'Reconnaissance' },
  { id: 'resource-development', name: 'Resource Development' },
  { id: 'initial-access', name: 'Initial Access' },
  { id: 'execution', name: 'Execution' },
  { id: 'persistence', name: 'Persistence' },
  { id: 'privilege-escalation', name: 'Privilege Escalation' },
  { id: 'defense-evasion', name: 'Defense Evasion' },
  { id: 'credential-access', name: 'Credential Access' },
  { id: 'discovery', name: 'Discovery' },
  { id: 'lateral-movement', name: 'Lateral Movement' },
  { id: 'collection', name: 'Collection' },
  { id: 'command-and-control', name: 'Command and Control' },
  { id: 'exfiltration', name: 'Exfiltration' },
  { id: 'impact', name: 'Impact' },
];
