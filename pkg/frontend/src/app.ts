/** Bootstraps the workbench and wires state transitions to the DOM. */

import { ApiClient } from './api.js';
import { renderCoa } from './coa.js';
import { renderMatrix } from './matrix.js';
import {
  addArc,
  addEvent,
  clearGroup,
  flipEventStatus,
  initialState,
  loadGroups,
  openCase,
  runPivot,
  selectGroup,
  type WorkbenchState,
} from './state.js';
import { renderThread } from './thread.js';

function apiBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get('api');
  return fromQuery ?? 'http://127.0.0.1:8787';
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const api = new ApiClient(apiBaseUrl());
let state: WorkbenchState = initialState();

function render(): void {
  const groupSelect = el<HTMLSelectElement>('group-select');
  if (groupSelect.options.length !== state.groups.length + 1) {
    groupSelect.replaceChildren(new Option('— group —', ''));
    for (const group of state.groups) {
      groupSelect.append(new Option(`${group.name} (${group.id})`, group.name));
    }
  }
  el('highlight-count').textContent = state.highlights.size
    ? `${state.highlights.size} highlighted cells`
    : '';
  renderMatrix(el('matrix'), state.profile, state.highlights);
  renderThread(el('thread'), state.caseDoc, {
    onFlipStatus: (eventId) => {
      void update(flipEventStatus(state, api, eventId));
    },
  });
  renderCoa(el('coa'), state.coa);

  const results = el('pivot-results');
  results.replaceChildren();
  for (const event of state.pivotResults) {
    const item = document.createElement('li');
    item.textContent = `#${event.id} [${event.phase}] ${event.description}`;
    results.append(item);
  }

  const toast = el('toast');
  toast.textContent = state.error ?? '';
  toast.style.display = state.error ? 'block' : 'none';
}

async function update(next: Promise<WorkbenchState> | WorkbenchState): Promise<void> {
  state = await next;
  render();
}

async function boot(): Promise<void> {
  el<HTMLElement>('api-url').textContent = api.baseUrl;

  el<HTMLSelectElement>('group-select').addEventListener('change', (evt) => {
    const name = (evt.target as HTMLSelectElement).value;
    void update(name ? selectGroup(state, api, name) : clearGroup(state));
  });

  el<HTMLButtonElement>('open-case').addEventListener('click', () => {
    const caseId = el<HTMLInputElement>('case-id').value.trim();
    if (caseId) void update(openCase(state, api, caseId));
  });

  el<HTMLButtonElement>('pivot-run').addEventListener('click', () => {
    const field = el<HTMLSelectElement>('pivot-field').value;
    const value = el<HTMLInputElement>('pivot-value').value;
    void update(runPivot(state, api, field, value));
  });

  el<HTMLButtonElement>('add-event').addEventListener('click', () => {
    const raw = el<HTMLTextAreaElement>('event-json').value;
    try {
      void update(addEvent(state, api, JSON.parse(raw)));
    } catch (error) {
      void update({ ...state, error: `event JSON: ${error}` });
    }
  });

  el<HTMLButtonElement>('add-arc').addEventListener('click', () => {
    const raw = el<HTMLTextAreaElement>('arc-json').value;
    try {
      void update(addArc(state, api, JSON.parse(raw)));
    } catch (error) {
      void update({ ...state, error: `arc JSON: ${error}` });
    }
  });

  await update(loadGroups(state, api));

  // convenience: open the bundled case when present
  try {
    const cases = await api.listCases();
    if (cases.some((c) => c.id === 'whispergate')) {
      el<HTMLInputElement>('case-id').value = 'whispergate';
      await update(openCase(state, api, 'whispergate'));
    }
  } catch {
    // service without cases is fine
  }
}

void boot();
