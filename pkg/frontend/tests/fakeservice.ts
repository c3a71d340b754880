/**
 * In-memory stand-in for the atlas service, driven by captured payloads
 * (tests/testdata/*.json, regenerated by scripts/dump_workbench_testdata.py).
 * It emulates the server-side rules the workbench leans on: duplicate event
 * ids, phase regression on arcs, vertex requirements for real events.
 */

import { readFileSync } from 'node:fs';

import type { FetchLike } from '../src/api.js';
import type { CaseDoc, CoaMatrix, GroupRef, Profile } from '../src/types.js';

export function loadTestData<T>(name: string): T {
  const url = new URL(`./testdata/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf8')) as T;
}

const PHASE_ORDER = [
  'reconnaissance',
  'weaponization',
  'delivery',
  'exploitation',
  'installation',
  'command-and-control',
  'actions-on-objectives',
];

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

function error(status: number, code: string, message: string, path = ''): Response {
  return json(status, { code, message, path });
}

export class FakeService {
  groups: GroupRef[] = loadTestData('groups.json');
  profile: Profile = loadTestData('apt28_profile.json');
  coa: CoaMatrix = loadTestData('whispergate_coa.json');
  cases = new Map<string, CaseDoc>([
    ['whispergate', loadTestData<CaseDoc>('whispergate_case.json')],
  ]);
  requests: string[] = [];

  readonly fetch: FetchLike = async (url, init) => this.handle(url, init);

  private profileNames(): Set<string> {
    return new Set(
      [this.profile.group.name, ...this.profile.aliases].map((n) => n.toLowerCase()),
    );
  }

  private validateCase(doc: CaseDoc): Response | null {
    const seen = new Set<number>();
    for (const event of doc.thread.events) {
      if (seen.has(event.id)) {
        return error(409, 'duplicate', `duplicate event id ${event.id}`);
      }
      seen.add(event.id);
      if (event.status === 'real') {
        for (const field of ['adversary', 'capability', 'infrastructure', 'victim'] as const) {
          if (!event[field]) {
            return error(400, 'validation', `real event ${event.id} has empty ${field}`);
          }
        }
      }
    }
    for (const arc of doc.thread.arcs) {
      const from = doc.thread.events.find((e) => e.id === arc.from);
      const to = doc.thread.events.find((e) => e.id === arc.to);
      if (!from || !to) {
        return error(400, 'validation', `arc ${arc.label}: dangling endpoint`);
      }
      if (PHASE_ORDER.indexOf(from.phase) > PHASE_ORDER.indexOf(to.phase)) {
        return error(400, 'validation', `arc ${arc.label}: phase regression`);
      }
    }
    return null;
  }

  private handle(url: string, init?: RequestInit): Response {
    const method = init?.method ?? 'GET';
    const parsed = new URL(url);
    const path = parsed.pathname;
    this.requests.push(`${method} ${path}`);

    if (method === 'GET' && path === '/groups') {
      return json(200, this.groups);
    }

    let match = path.match(/^\/groups\/([^/]+)\/profile$/);
    if (method === 'GET' && match) {
      const name = decodeURIComponent(match[1]).toLowerCase();
      if (this.profileNames().has(name)) {
        return json(200, this.profile);
      }
      return error(404, 'not_found', `no group named '${match[1]}'`);
    }

    if (method === 'GET' && path === '/cases') {
      return json(200, [...this.cases.values()].map((c) => ({ id: c.id, title: c.title })));
    }

    match = path.match(/^\/cases\/([^/]+)$/);
    if (match) {
      const doc = this.cases.get(decodeURIComponent(match[1]));
      if (!doc) return error(404, 'not_found', `no case '${match[1]}'`);
      if (method === 'GET') return json(200, doc);
      if (method === 'PUT') {
        const incoming = JSON.parse(String(init?.body)) as CaseDoc;
        const rejection = this.validateCase(incoming);
        if (rejection) return rejection;
        this.cases.set(incoming.id, incoming);
        return json(200, incoming);
      }
    }

    match = path.match(/^\/cases\/([^/]+)\/events$/);
    if (method === 'POST' && match) {
      const doc = this.cases.get(decodeURIComponent(match[1]));
      if (!doc) return error(404, 'not_found', `no case '${match[1]}'`);
      const event = JSON.parse(String(init?.body));
      const updated: CaseDoc = {
        ...doc,
        thread: { ...doc.thread, events: [...doc.thread.events, event] },
      };
      const rejection = this.validateCase(updated);
      if (rejection) return rejection;
      this.cases.set(doc.id, updated);
      return json(201, updated);
    }

    match = path.match(/^\/cases\/([^/]+)\/arcs$/);
    if (method === 'POST' && match) {
      const doc = this.cases.get(decodeURIComponent(match[1]));
      if (!doc) return error(404, 'not_found', `no case '${match[1]}'`);
      const arc = JSON.parse(String(init?.body));
      const updated: CaseDoc = {
        ...doc,
        thread: { ...doc.thread, arcs: [...doc.thread.arcs, arc] },
      };
      const rejection = this.validateCase(updated);
      if (rejection) return rejection;
      this.cases.set(doc.id, updated);
      return json(201, updated);
    }

    match = path.match(/^\/cases\/([^/]+)\/coa$/);
    if (method === 'GET' && match) {
      return json(200, this.coa);
    }

    match = path.match(/^\/cases\/([^/]+)\/pivot$/);
    if (method === 'GET' && match) {
      const doc = this.cases.get(decodeURIComponent(match[1]));
      if (!doc) return error(404, 'not_found', `no case '${match[1]}'`);
      const field = parsed.searchParams.get('field') ?? '';
      const value = parsed.searchParams.get('value') ?? '';
      if (['adversary', 'capability', 'infrastructure', 'victim'].includes(field)) {
        const needle = value.toLowerCase();
        return json(
          200,
          doc.thread.events.filter((e) =>
            String(e[field as keyof typeof e]).toLowerCase().includes(needle),
          ),
        );
      }
      if (field === 'status') {
        return json(200, doc.thread.events.filter((e) => e.status === value));
      }
      return error(400, 'validation', `unknown pivot field '${field}'`);
    }

    return error(404, 'not_found', `no route ${method} ${path}`);
  }
}
