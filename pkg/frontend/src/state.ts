/**
 * Workbench state and transitions.
 *
 * Transitions return a fresh state; nothing is derived locally. Thread
 * mutations are pessimistic: the canvas only changes after the server
 * acknowledged the mutation (validation rules live server-side), and at most
 * one mutation per case is in flight.
 */

import { ApiError, type ApiClient } from './api.js';
import type { CaseArc, CaseDoc, CaseEvent, CoaMatrix, GroupRef, Profile } from './types.js';

export interface WorkbenchState {
  groups: GroupRef[];
  selectedGroup: string | null;
  profile: Profile | null;
  /** `${tactic}/${techniqueId}` for every highlighted matrix cell */
  highlights: Set<string>;
  activeCaseId: string | null;
  /** last server-acknowledged case document */
  caseDoc: CaseDoc | null;
  coa: CoaMatrix | null;
  pivotField: string;
  pivotValue: string;
  pivotResults: CaseEvent[];
  mutationInFlight: boolean;
  /** transient error surface (toast / inline message) */
  error: string | null;
}

export function initialState(): WorkbenchState {
  return {
    groups: [],
    selectedGroup: null,
    profile: null,
    highlights: new Set(),
    activeCaseId: null,
    caseDoc: null,
    coa: null,
    pivotField: 'infrastructure',
    pivotValue: '',
    pivotResults: [],
    mutationInFlight: false,
    error: null,
  };
}

/** Matrix cells a profile lights up: one per (tactic, technique) pair. */
export function highlightKeys(profile: Profile): Set<string> {
  const keys = new Set<string>();
  for (const row of profile.ttp) {
    for (const technique of row.techniques) {
      keys.add(`${row.tactic}/${technique.id}`);
    }
  }
  return keys;
}

function describe(error: unknown): string {
  if (error instanceof ApiError) {
    return error.body.message || `${error.status}`;
  }
  return error instanceof Error ? error.message : String(error);
}

export async function loadGroups(state: WorkbenchState, api: ApiClient): Promise<WorkbenchState> {
  return { ...state, groups: await api.getGroups() };
}

export async function selectGroup(
  state: WorkbenchState,
  api: ApiClient,
  name: string,
): Promise<WorkbenchState> {
  try {
    const profile = await api.getProfile(name);
    return {
      ...state,
      selectedGroup: name,
      profile,
      highlights: highlightKeys(profile),
      error: null,
    };
  } catch (error) {
    // unknown group: surface the message, leave the highlight state untouched
    return { ...state, error: describe(error) };
  }
}

export function clearGroup(state: WorkbenchState): WorkbenchState {
  return { ...state, selectedGroup: null, profile: null, highlights: new Set() };
}

export async function openCase(
  state: WorkbenchState,
  api: ApiClient,
  caseId: string,
): Promise<WorkbenchState> {
  try {
    const caseDoc = await api.getCase(caseId);
    const coa = await api.getCoa(caseId);
    return { ...state, activeCaseId: caseId, caseDoc, coa, pivotResults: [], error: null };
  } catch (error) {
    return { ...state, error: describe(error) };
  }
}

async function applyMutation(
  state: WorkbenchState,
  api: ApiClient,
  send: () => Promise<CaseDoc>,
): Promise<WorkbenchState> {
  if (!state.activeCaseId) {
    return { ...state, error: 'no active case' };
  }
  if (state.mutationInFlight) {
    return { ...state, error: 'another mutation is still in flight' };
  }
  const pending = { ...state, mutationInFlight: true };
  try {
    const caseDoc = await send();
    const coa = await api.getCoa(caseDoc.id);
    return { ...pending, caseDoc, coa, mutationInFlight: false, error: null };
  } catch (error) {
    // rejected server-side: canvas stays on the acknowledged document
    return { ...pending, mutationInFlight: false, error: describe(error) };
  }
}

export async function addEvent(
  state: WorkbenchState,
  api: ApiClient,
  event: Partial<CaseEvent>,
): Promise<WorkbenchState> {
  return applyMutation(state, api, () => api.postEvent(state.activeCaseId!, event));
}

export async function addArc(
  state: WorkbenchState,
  api: ApiClient,
  arc: Partial<CaseArc>,
): Promise<WorkbenchState> {
  return applyMutation(state, api, () => api.postArc(state.activeCaseId!, arc));
}

/**
 * Flip one event between hypothesis and real by replacing the whole case
 * document; the server re-validates everything (a real event needs all four
 * diamond vertices filled).
 */
export async function flipEventStatus(
  state: WorkbenchState,
  api: ApiClient,
  eventId: number,
): Promise<WorkbenchState> {
  if (!state.caseDoc) {
    return { ...state, error: 'no active case' };
  }
  const current = state.caseDoc.thread.events.find((e) => e.id === eventId);
  if (!current) {
    return { ...state, error: `no event ${eventId}` };
  }
  const flipped: CaseDoc = {
    ...state.caseDoc,
    thread: {
      ...state.caseDoc.thread,
      events: state.caseDoc.thread.events.map((e) =>
        e.id === eventId
          ? { ...e, status: e.status === 'hypothesis' ? 'real' : 'hypothesis' }
          : e,
      ),
    },
  };
  return applyMutation(state, api, () => api.putCase(flipped));
}

export async function runPivot(
  state: WorkbenchState,
  api: ApiClient,
  field: string,
  value: string,
): Promise<WorkbenchState> {
  if (!state.activeCaseId) {
    return { ...state, error: 'no active case' };
  }
  try {
    const results = await api.getPivot(state.activeCaseId, field, value);
    return { ...state, pivotField: field, pivotValue: value, pivotResults: results, error: null };
  } catch (error) {
    return { ...state, error: describe(error) };
  }
}
