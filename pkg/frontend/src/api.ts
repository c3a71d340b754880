/** Thin typed client for the atlas service; every call maps to one endpoint. */

import type {
  ApiErrorBody,
  CaseArc,
  CaseDoc,
  CaseEvent,
  CoaMatrix,
  GroupRef,
  NarrativeRow,
  Profile,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly body: ApiErrorBody;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message || `request failed with ${status}`);
    this.status = status;
    this.body = body;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let body: ApiErrorBody = { code: 'internal', message: response.statusText, path };
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body; keep the fallback
      }
      throw new ApiError(response.status, body);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  getGroups(): Promise<GroupRef[]> {
    return this.request('/groups');
  }

  getProfile(name: string): Promise<Profile> {
    return this.request(`/groups/${encodeURIComponent(name)}/profile`);
  }

  listCases(): Promise<{ id: string; title: string }[]> {
    return this.request('/cases');
  }

  getCase(caseId: string): Promise<CaseDoc> {
    return this.request(`/cases/${encodeURIComponent(caseId)}`);
  }

  putCase(doc: CaseDoc): Promise<CaseDoc> {
    return this.request(`/cases/${encodeURIComponent(doc.id)}`, {
      method: 'PUT',
      body: JSON.stringify(doc),
    });
  }

  postEvent(caseId: string, event: Partial<CaseEvent>): Promise<CaseDoc> {
    return this.request(`/cases/${encodeURIComponent(caseId)}/events`, {
      method: 'POST',
      body: JSON.stringify(event),
    });
  }

  postArc(caseId: string, arc: Partial<CaseArc>): Promise<CaseDoc> {
    return this.request(`/cases/${encodeURIComponent(caseId)}/arcs`, {
      method: 'POST',
      body: JSON.stringify(arc),
    });
  }

  getCoa(caseId: string): Promise<CoaMatrix> {
    return this.request(`/cases/${encodeURIComponent(caseId)}/coa?format=json`);
  }

  getPivot(caseId: string, field: string, value: string): Promise<CaseEvent[]> {
    const query = `field=${encodeURIComponent(field)}&value=${encodeURIComponent(value)}`;
    return this.request(`/cases/${encodeURIComponent(caseId)}/pivot?${query}`);
  }

  getPaths(caseId: string): Promise<number[][]> {
    return this.request(`/cases/${encodeURIComponent(caseId)}/paths`);
  }

  getNarrative(caseId: string): Promise<NarrativeRow[]> {
    return this.request(`/cases/${encodeURIComponent(caseId)}/narrative`);
  }
}
