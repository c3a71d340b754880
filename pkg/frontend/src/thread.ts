/** Diamond thread canvas: events in seven phase lanes, arcs beneath. */

import type { CaseDoc, CaseEvent } from './types.js';

const PHASE_LANES = [
  'reconnaissance',
  'weaponization',
  'delivery',
  'exploitation',
  'installation',
  'command-and-control',
  'actions-on-objectives',
];

export interface ThreadHandlers {
  onFlipStatus: (eventId: number) => void;
}

function eventCard(event: CaseEvent, handlers: ThreadHandlers): HTMLElement {
  const card = document.createElement('div');
  card.className = `event-card ${event.status}`;
  card.dataset.eventId = String(event.id);

  const head = document.createElement('div');
  head.className = 'event-head';
  head.textContent = `#${event.id} · ${event.status} · ${event.confidence}`;
  card.append(head);

  const verts = document.createElement('dl');
  for (const [label, value] of [
    ['adversary', event.adversary],
    ['capability', event.capability],
    ['infrastructure', event.infrastructure],
    ['victim', event.victim],
  ]) {
    if (!value) continue;
    const dt = document.createElement('dt');
    dt.textContent = label;
    const dd = document.createElement('dd');
    dd.textContent = value;
    verts.append(dt, dd);
  }
  card.append(verts);

  if (event.techniques.length) {
    const tech = document.createElement('div');
    tech.className = 'event-techniques';
    tech.textContent = event.techniques.join(', ');
    card.append(tech);
  }

  const flip = document.createElement('button');
  flip.textContent = event.status === 'hypothesis' ? 'mark real' : 'mark hypothesis';
  flip.addEventListener('click', () => handlers.onFlipStatus(event.id));
  card.append(flip);
  return card;
}

export function renderThread(
  container: HTMLElement,
  caseDoc: CaseDoc | null,
  handlers: ThreadHandlers,
): void {
  container.replaceChildren();
  if (!caseDoc) {
    const hint = document.createElement('p');
    hint.className = 'muted';
    hint.textContent = 'open a case to edit its activity thread';
    container.append(hint);
    return;
  }

  const lanes = document.createElement('div');
  lanes.className = 'thread-lanes';
  for (const phase of PHASE_LANES) {
    const lane = document.createElement('div');
    lane.className = 'thread-lane';
    const header = document.createElement('h3');
    header.textContent = phase;
    lane.append(header);
    for (const event of caseDoc.thread.events.filter((e) => e.phase === phase)) {
      lane.append(eventCard(event, handlers));
    }
    lanes.append(lane);
  }
  container.append(lanes);

  if (caseDoc.thread.arcs.length) {
    const list = document.createElement('ul');
    list.className = 'arc-list';
    for (const arc of caseDoc.thread.arcs) {
      const item = document.createElement('li');
      item.textContent =
        `${arc.label}: ${arc.from} → ${arc.to} [${arc.combinator}, ${arc.status}, ` +
        `${arc.confidence}] ${arc.provides}`;
      list.append(item);
    }
    container.append(list);
  }
}
